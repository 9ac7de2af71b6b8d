public class ReminderDialog extends DialogFragment {
    private TimePicker picker;

    private void save(Reminder reminder) {
        int hour = picker.getCurrentHour();
        reminder.setHour(hour);
        reminder.save();
    }
}
