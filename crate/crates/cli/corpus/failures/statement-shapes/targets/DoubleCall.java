public class TimeLogger {
    private TimePicker start;
    private TimePicker end;

    void logSpan() {
        log(start.getCurrentMinute() + end.getCurrentMinute());
    }
}
