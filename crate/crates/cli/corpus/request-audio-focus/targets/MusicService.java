public class MusicService extends Service implements AudioManager.OnAudioFocusChangeListener {
    private AudioManager am;

    boolean requestFocus() {
        int r = am.requestAudioFocus(this, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
        return r == AudioManager.AUDIOFOCUS_REQUEST_GRANTED;
    }
}
