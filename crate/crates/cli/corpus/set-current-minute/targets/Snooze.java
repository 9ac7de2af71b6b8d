class Snooze {
    void snooze(TimePicker picker, int minute, int step) {
        picker.setCurrentMinute((minute + step) % 60);
    }
}
