public class GameActivity extends Activity {
    private Vibrator vibrator;

    public void onCollision() {
        score.decrease();
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            vibrator.vibrate(createVibration(3, 9 / 3));
        } else {
            vibrator.vibrate(200);
        }
    }

    public VibrationEffect createVibration(int time, int amplitude) {
        return VibrationEffect.createOneShot(time, amplitude);
    }
}
