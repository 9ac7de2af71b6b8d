public class AlarmActivity extends Activity {
    private TimePicker timePicker;

    public int selectedHour() {
        int hour;
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            hour = timePicker.getHour();
        } else {
            hour = timePicker.getCurrentHour();
        }
        return hour;
    }
}
