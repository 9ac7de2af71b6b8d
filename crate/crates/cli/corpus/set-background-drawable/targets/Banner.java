class Banner {
    private View banner;
    private Drawable placeholder;

    void show() {
        banner.setBackgroundDrawable(placeholder);
        banner.setVisibility(View.VISIBLE);
    }
}
