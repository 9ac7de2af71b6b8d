public class MusicService extends Service implements AudioManager.OnAudioFocusChangeListener {
    private AudioManager am;

    boolean requestFocus() {
        int r;
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            r = am.requestAudioFocus(new AudioFocusRequestOreo(this).getAudioFocusRequest());
        } else {
            r = am.requestAudioFocus(this, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
        }
        return r == AudioManager.AUDIOFOCUS_REQUEST_GRANTED;
    }

    public class AudioFocusRequestOreo {
        private AudioFocusRequest audioFocusRequest;

        public AudioFocusRequestOreo(AudioManager.OnAudioFocusChangeListener listener) {
            audioFocusRequest = new AudioFocusRequest.Builder(AudioManager.AUDIOFOCUS_GAIN).build();
        }

        public AudioFocusRequest getAudioFocusRequest() {
            return audioFocusRequest;
        }
    }
}
