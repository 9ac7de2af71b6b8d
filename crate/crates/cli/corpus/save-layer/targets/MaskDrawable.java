class MaskDrawable {
    private RectF bounds;

    void draw(Canvas c, Paint maskPaint) {
        c.saveLayer(bounds.left, bounds.top, bounds.right, bounds.bottom, null, 31);
        c.drawRect(bounds, maskPaint);
        c.restore();
    }
}
