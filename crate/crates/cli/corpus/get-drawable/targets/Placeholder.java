class Placeholder {
    Drawable get(Resources r, boolean dark) {
        int id = dark ? R.drawable.ph_dark : R.drawable.ph_light;
        return r.getDrawable(id);
    }
}
