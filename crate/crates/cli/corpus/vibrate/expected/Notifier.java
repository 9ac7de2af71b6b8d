public class Notifier {
    public void alert(Context context) {
        Vibrator v = (Vibrator) context.getSystemService(Context.VIBRATOR_SERVICE);
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            v.vibrate(createVibration(3, 9 / 3));
        } else {
            v.vibrate(500);
        }
    }

    public VibrationEffect createVibration(int time, int amplitude) {
        return VibrationEffect.createOneShot(time, amplitude);
    }
}
