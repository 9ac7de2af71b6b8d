public class FadeView extends View {
    private Paint fadePaint;

    protected void onDraw(Canvas canvas) {
        int count = canvas.saveLayer(0, 0, getWidth(), getHeight(), fadePaint, Canvas.ALL_SAVE_FLAG);
        drawContent(canvas);
        canvas.restoreToCount(count);
    }
}
