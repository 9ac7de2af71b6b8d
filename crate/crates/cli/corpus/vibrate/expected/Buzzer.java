class Buzzer {
    private Vibrator vib;

    void buzz(long ms) {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            vib.vibrate(createVibration(3, 9 / 3));
        } else {
            vib.vibrate(ms);
        }
    }

    public VibrationEffect createVibration(int time, int amplitude) {
        return VibrationEffect.createOneShot(time, amplitude);
    }
}
