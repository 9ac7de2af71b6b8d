public class TimeLogger {
    private TimePicker start;
    private TimePicker end;

    void logSpan() {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            log(start.getMinute() + end.getCurrentMinute());
        } else {
            log(start.getCurrentMinute() + end.getCurrentMinute());
        }
    }
}
