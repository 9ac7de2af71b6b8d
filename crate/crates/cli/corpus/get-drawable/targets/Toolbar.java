public class Toolbar {
    private Resources res;
    private ImageView logo;

    public void init() {
        logo.setImageDrawable(res.getDrawable(R.drawable.logo));
    }
}
