public class GameActivity extends Activity {
    private Vibrator vibrator;

    public void onCollision() {
        score.decrease();
        vibrator.vibrate(200);
    }
}
