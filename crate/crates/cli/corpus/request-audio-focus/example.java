public class Player implements AudioManager.OnAudioFocusChangeListener {
    AudioFocusRequestOreo audioFocusRequestOreo = new AudioFocusRequestOreo(this);
    AudioManager audioManager;

    public void tryToGetAudioFocus() {
        OnAudioFocusChangeListener listener = this;
        int result;
        int type = AudioManager.STREAM_MUSIC;
        int duration = AudioManager.AUDIOFOCUS_GAIN;
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            AudioFocusRequest request = audioFocusRequestOreo.getAudioFocusRequest();
            result = audioManager.requestAudioFocus(request);
        } else {
            result = audioManager.requestAudioFocus(listener, type, duration);
        }
    }

    private class AudioFocusRequestOreo {
        private AudioFocusRequest audioFocusRequest;

        private AudioFocusRequestOreo(AudioManager.OnAudioFocusChangeListener listener) {
            audioFocusRequest = new AudioFocusRequest.Builder(AudioManager.AUDIOFOCUS_GAIN).build();
        }

        AudioFocusRequest getAudioFocusRequest() {
            return audioFocusRequest;
        }
    }
}
