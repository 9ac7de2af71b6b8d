class Defaults {
    private static final int DEFAULT_HOUR = 7;

    void reset(TimePicker picker) {
        if (picker != null)
            picker.setCurrentHour(DEFAULT_HOUR + 1);
    }
}
