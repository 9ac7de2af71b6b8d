//! Java-subset syntax: lexing, parsing into a span-annotated tree, span
//! edits, and the structural queries the migration passes rely on.

pub mod edit;
pub mod expr;
pub mod lexer;
pub mod parser;
pub mod query;
pub mod tree;

use std::fmt;

pub use edit::{render_edits, Edit, EditSet, OverlapError};
pub use expr::Expr;
pub use parser::{parse, parse_expression, parse_members, parse_with_path};
pub use query::{enclosing_context, find_invocations, NotInUnit};
pub use tree::{line_col, Ident, LiteralKind, Modifiers, Node, NodeId, NodeKind, SourceUnit, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let (line, column) = line_col(text, offset);
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}
