class ClockFormatter {
    String format(TimePicker tp) {
        return String.format("%02d", tp.getCurrentHour());
    }
}
