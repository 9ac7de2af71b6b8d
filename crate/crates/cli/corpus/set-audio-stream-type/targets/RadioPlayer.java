public class RadioPlayer {
    private MediaPlayer player;

    public void prepare(String url) {
        player = new MediaPlayer();
        player.setAudioStreamType(AudioManager.STREAM_MUSIC);
        player.setDataSource(url);
    }
}
