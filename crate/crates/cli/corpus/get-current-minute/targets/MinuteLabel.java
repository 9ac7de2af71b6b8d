class MinuteLabel {
    private TimePicker picker;
    private TextView label;

    void refresh() {
        label.setText(String.valueOf(picker.getCurrentMinute()));
    }
}
