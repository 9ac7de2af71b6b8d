class DurationPicker {
    int totalMinutes(TimePicker picker, int hours) {
        int minutes = picker.getCurrentMinute();
        return hours * 60 + minutes;
    }
}
