public class EditAlarm extends Activity {
    private TimePicker timePicker;

    protected void onResume(Alarm alarm) {
        timePicker.setCurrentHour(alarm.hour);
    }
}
