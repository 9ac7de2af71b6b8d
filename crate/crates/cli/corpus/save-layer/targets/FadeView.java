public class FadeView extends View {
    private Paint fadePaint;
    private int width;
    private int height;

    protected void onDraw(Canvas canvas) {
        int count = canvas.saveLayer(0, 0, width, height, fadePaint, Canvas.ALL_SAVE_FLAG);
        drawContent(canvas);
        canvas.restoreToCount(count);
    }
}
