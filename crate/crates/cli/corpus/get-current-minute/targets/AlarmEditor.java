public class AlarmEditor {
    private TimePicker timePicker;

    public Alarm build() {
        Alarm alarm = new Alarm();
        alarm.minutes = timePicker.getCurrentMinute();
        return alarm;
    }
}
