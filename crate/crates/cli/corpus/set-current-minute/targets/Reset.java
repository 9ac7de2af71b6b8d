class Reset {
    private TimePicker picker;

    void clear() {
        picker.setCurrentMinute(0);
    }
}
