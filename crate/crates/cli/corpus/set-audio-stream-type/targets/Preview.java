class Preview {
    private MediaPlayer mediaPlayer;
    private int stream;

    void configure() {
        mediaPlayer.setAudioStreamType(stream);
    }
}
