class Ringtone implements AudioManager.OnAudioFocusChangeListener {
    private AudioManager manager;
    private int granted;

    void ring() {
        granted = manager.requestAudioFocus(this, AudioManager.STREAM_RING, AudioManager.AUDIOFOCUS_GAIN_TRANSIENT);
    }
}
