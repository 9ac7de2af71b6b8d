class ListAdapter {
    private Resources resources;

    Drawable divider() {
        Drawable d = resources.getDrawable(R.drawable.divider);
        return d;
    }
}
