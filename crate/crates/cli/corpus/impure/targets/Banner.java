class Banner {
    private View banner;
    private Resources res;

    void show() {
        banner.setBackgroundDrawable(res.getDrawable(R.drawable.banner));
        banner.setVisibility(View.VISIBLE);
    }
}
