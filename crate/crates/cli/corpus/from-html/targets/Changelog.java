public class Changelog {
    private TextView text;

    public void bind(Release release) {
        text.setText(Html.fromHtml(release.notes));
    }
}
