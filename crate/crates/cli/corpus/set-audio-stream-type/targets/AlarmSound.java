class AlarmSound {
    void play(MediaPlayer mp) {
        mp.setAudioStreamType(AudioManager.STREAM_ALARM);
        mp.start();
    }
}
