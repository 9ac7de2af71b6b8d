class Icons {
    Drawable icon(Resources resources, int id) {
        Drawable d;
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.LOLLIPOP) {
            d = resources.getDrawable(id, null);
        } else {
            d = resources.getDrawable(id);
        }
        return d;
    }
}
