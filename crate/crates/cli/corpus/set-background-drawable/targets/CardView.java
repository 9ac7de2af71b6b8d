public class CardView extends FrameLayout {
    private View content;

    public void highlight(Drawable d) {
        content.setBackgroundDrawable(d);
    }
}
