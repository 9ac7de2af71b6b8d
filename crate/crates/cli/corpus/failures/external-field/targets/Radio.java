class Radio {
    private MediaPlayer mp;

    void tune() {
        mp.setAudioStreamType(AudioManager.STREAM_MUSIC);
    }
}
