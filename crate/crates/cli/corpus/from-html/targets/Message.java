class Message {
    CharSequence format(String name) {
        return Html.fromHtml("<b>" + name + "</b>");
    }
}
