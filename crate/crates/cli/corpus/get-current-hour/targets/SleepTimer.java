public class SleepTimer {
    private TimePicker mStartPicker;
    private int mStartHour;

    public void onTimeChanged() {
        mStartHour = mStartPicker.getCurrentHour();
        log("start hour " + mStartHour);
    }
}
