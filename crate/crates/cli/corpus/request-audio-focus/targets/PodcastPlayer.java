public class PodcastPlayer implements AudioManager.OnAudioFocusChangeListener {
    private AudioManager audioManager;

    public void play() {
        audioManager.requestAudioFocus(this, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
        start();
    }
}
