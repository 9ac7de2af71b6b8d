use super::tree::{SourceUnit, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edit {
    pub span: Span,
    pub replacement: String,
}

/// Span replacements against one source text.
///
/// Edits may be submitted in any order; they are kept sorted by start offset.
/// An empty span is an insertion. Two edits conflict when their spans
/// intersect or when two insertions (or an insertion and a replacement)
/// share a start offset, since their relative order would be ambiguous.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditSet {
    edits: Vec<Edit>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("edit {second} overlaps edit {first}")]
pub struct OverlapError {
    pub first: Span,
    pub second: Span,
}

fn conflicts(a: Span, b: Span) -> bool {
    a.overlaps(b) || a.start == b.start
        // an insertion strictly inside a replacement
        || (a.is_empty() && b.start < a.start && a.start < b.end)
        || (b.is_empty() && a.start < b.start && b.start < a.end)
}

impl EditSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.edits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edit> {
        self.edits.iter()
    }

    pub fn would_conflict(&self, span: Span) -> bool {
        self.edits.iter().any(|e| conflicts(e.span, span))
    }

    pub fn push(&mut self, span: Span, replacement: impl Into<String>) -> Result<(), OverlapError> {
        if let Some(e) = self.edits.iter().find(|e| conflicts(e.span, span)) {
            return Err(OverlapError { first: e.span, second: span });
        }
        let at = self.edits.partition_point(|e| e.span.start < span.start);
        self.edits.insert(at, Edit { span, replacement: replacement.into() });
        Ok(())
    }

    pub fn replace(&mut self, span: Span, replacement: impl Into<String>) -> Result<(), OverlapError> {
        self.push(span, replacement)
    }

    pub fn insert(&mut self, offset: usize, text: impl Into<String>) -> Result<(), OverlapError> {
        self.push(Span::empty(offset), text)
    }

    pub fn delete(&mut self, span: Span) -> Result<(), OverlapError> {
        self.push(span, String::new())
    }

    /// Apply to `text`, which must be the text the spans were computed on.
    pub fn apply(&self, text: &str) -> String {
        let mut out = String::with_capacity(text.len());
        let mut cursor = 0;
        for e in &self.edits {
            out.push_str(&text[cursor..e.span.start]);
            out.push_str(&e.replacement);
            cursor = e.span.end;
        }
        out.push_str(&text[cursor..]);
        out
    }
}

impl FromIterator<Edit> for Result<EditSet, OverlapError> {
    fn from_iter<I: IntoIterator<Item = Edit>>(iter: I) -> Self {
        let mut set = EditSet::new();
        for e in iter {
            set.push(e.span, e.replacement)?;
        }
        Ok(set)
    }
}

/// Render `unit` with `edits` applied; untouched bytes are copied verbatim.
pub fn render_edits(unit: &SourceUnit, edits: &EditSet) -> Result<String, OverlapError> {
    for e in &edits.edits {
        if e.span.end > unit.text.len() {
            return Err(OverlapError { first: Span::new(0, unit.text.len()), second: e.span });
        }
    }
    Ok(edits.apply(&unit.text))
}
