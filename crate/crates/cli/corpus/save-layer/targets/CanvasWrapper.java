public class CanvasWrapper {
    private Canvas mCanvas;

    public int saveLayer(float left, float top, float right, float bottom, Paint paint, int saveFlags) {
        return mCanvas.saveLayer(left, top, right, bottom, paint, saveFlags);
    }
}
