public class AboutActivity extends Activity {
    private TextView body;

    public void render(String source) {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.N) {
            body.setText(Html.fromHtml(source, Html.FROM_HTML_MODE_LEGACY));
        } else {
            body.setText(Html.fromHtml(source));
        }
    }
}
