class Title {
    void show(TextView view) {
        Spanned span = Html.fromHtml("<h2>Title</h2><br>");
        view.setText(span);
    }
}
