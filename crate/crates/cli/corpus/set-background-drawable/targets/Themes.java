class Themes {
    void clear(View root) {
        root.setBackgroundDrawable(null);
    }
}
