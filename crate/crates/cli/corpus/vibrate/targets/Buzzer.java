class Buzzer {
    private Vibrator vib;

    void buzz(long ms) {
        vib.vibrate(ms);
    }
}
