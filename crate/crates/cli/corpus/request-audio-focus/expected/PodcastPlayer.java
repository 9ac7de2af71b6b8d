public class PodcastPlayer implements AudioManager.OnAudioFocusChangeListener {
    private AudioManager audioManager;

    public void play() {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            audioManager.requestAudioFocus(new AudioFocusRequestOreo(this).getAudioFocusRequest());
        } else {
            audioManager.requestAudioFocus(this, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);
        }
        start();
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
