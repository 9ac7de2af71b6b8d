class Ringtone implements AudioManager.OnAudioFocusChangeListener {
    private AudioManager manager;
    private int granted;

    void ring() {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            granted = manager.requestAudioFocus(new AudioFocusRequestOreo(this).getAudioFocusRequest());
        } else {
            granted = manager.requestAudioFocus(this, AudioManager.STREAM_RING, AudioManager.AUDIOFOCUS_GAIN_TRANSIENT);
        }
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
