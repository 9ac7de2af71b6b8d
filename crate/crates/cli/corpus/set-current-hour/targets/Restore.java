class Restore {
    void restore(Bundle state, TimePicker picker) {
        int saved = state.getInt("hour");
        picker.setCurrentHour(saved);
    }
}
