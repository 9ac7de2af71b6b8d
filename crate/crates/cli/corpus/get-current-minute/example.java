class Clock {
    void show(TimePicker timePicker) {
        int minute;
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            minute = timePicker.getMinute();
        } else {
            minute = timePicker.getCurrentMinute();
        }
    }
}
