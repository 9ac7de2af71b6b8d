use std::fmt;

use serde::{Deserialize, Serialize};

/// Half-open byte range into a source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end, "inverted span {start}..{end}");
        Span { start, end }
    }

    pub fn empty(at: usize) -> Self {
        Span { start: at, end: at }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn contains_offset(&self, offset: usize) -> bool {
        self.start <= offset && offset < self.end
    }

    pub fn overlaps(&self, other: Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn slice<'a>(&self, text: &'a str) -> &'a str {
        &text[self.start..self.end]
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An identifier together with where it was written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub text: String,
    pub span: Span,
}

/// Keyword modifiers (`public`, `static`, ...) of a declaration. Annotations
/// are covered by `span` but not listed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Modifiers {
    pub keywords: Vec<Ident>,
    pub span: Option<Span>,
}

impl Modifiers {
    pub fn has(&self, keyword: &str) -> bool {
        self.keywords.iter().any(|k| k.text == keyword)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteralKind {
    Int,
    Float,
    Str,
    Char,
    Bool,
    Null,
}

/// Node kinds of the supported subset. Child layouts:
///
/// * `ClassDecl`: members
/// * `FieldDecl`, `LocalVarDecl`: declarators
/// * `Declarator`: optional initializer
/// * `MethodDecl`: params, then the body block when present
/// * `IfStmt`: condition, then-branch, optional else-branch
/// * `ExprStmt`: expression; `ReturnStmt`: optional expression
/// * `MethodInvocation`: receiver (when `has_receiver`), then arguments
/// * `FieldAccess`: target; `ObjectCreation`: arguments
/// * `BinaryExpr`, `AssignExpr`: lhs, rhs; `Paren`: inner expression
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    CompilationUnit,
    Import { path: String, is_package: bool },
    ClassDecl { name: Ident, keyword: String, modifiers: Modifiers },
    FieldDecl { ty: String, modifiers: Modifiers },
    MethodDecl { name: Ident, return_type: Option<String>, modifiers: Modifiers },
    Param { name: Ident, ty: String },
    Block,
    LocalVarDecl { ty: String, modifiers: Modifiers },
    Declarator { name: Ident },
    ExprStmt,
    IfStmt,
    ReturnStmt,
    OpaqueStmt,
    Literal(LiteralKind),
    NameExpr { name: String },
    FieldAccess { name: Ident },
    MethodInvocation { name: Ident, has_receiver: bool },
    ObjectCreation { ty: Ident },
    BinaryExpr { op: String },
    AssignExpr { op: String },
    Paren,
    OpaqueExpr,
}

impl NodeKind {
    pub fn is_statement(&self) -> bool {
        matches!(
            self,
            NodeKind::Block
                | NodeKind::LocalVarDecl { .. }
                | NodeKind::ExprStmt
                | NodeKind::IfStmt
                | NodeKind::ReturnStmt
                | NodeKind::OpaqueStmt
        )
    }

    pub fn is_expression(&self) -> bool {
        matches!(
            self,
            NodeKind::Literal(_)
                | NodeKind::NameExpr { .. }
                | NodeKind::FieldAccess { .. }
                | NodeKind::MethodInvocation { .. }
                | NodeKind::ObjectCreation { .. }
                | NodeKind::BinaryExpr { .. }
                | NodeKind::AssignExpr { .. }
                | NodeKind::Paren
                | NodeKind::OpaqueExpr
        )
    }

    pub fn is_opaque(&self) -> bool {
        matches!(self, NodeKind::OpaqueStmt | NodeKind::OpaqueExpr)
    }

    pub fn label(&self) -> &'static str {
        match self {
            NodeKind::CompilationUnit => "CompilationUnit",
            NodeKind::Import { .. } => "Import",
            NodeKind::ClassDecl { .. } => "ClassDecl",
            NodeKind::FieldDecl { .. } => "FieldDecl",
            NodeKind::MethodDecl { .. } => "MethodDecl",
            NodeKind::Param { .. } => "Param",
            NodeKind::Block => "Block",
            NodeKind::LocalVarDecl { .. } => "LocalVarDecl",
            NodeKind::Declarator { .. } => "Declarator",
            NodeKind::ExprStmt => "ExprStmt",
            NodeKind::IfStmt => "IfStmt",
            NodeKind::ReturnStmt => "ReturnStmt",
            NodeKind::OpaqueStmt => "OpaqueStmt",
            NodeKind::Literal(_) => "Literal",
            NodeKind::NameExpr { .. } => "NameExpr",
            NodeKind::FieldAccess { .. } => "FieldAccess",
            NodeKind::MethodInvocation { .. } => "MethodInvocation",
            NodeKind::ObjectCreation { .. } => "ObjectCreation",
            NodeKind::BinaryExpr { .. } => "BinaryExpr",
            NodeKind::AssignExpr { .. } => "AssignExpr",
            NodeKind::Paren => "Paren",
            NodeKind::OpaqueExpr => "OpaqueExpr",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub span: Span,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
}

/// A parsed file. Immutable once built; nodes live in a pre-order arena.
#[derive(Debug, Clone)]
pub struct SourceUnit {
    pub path: Option<String>,
    pub text: String,
    nodes: Vec<Node>,
}

impl SourceUnit {
    pub(crate) fn from_nodes(path: Option<String>, text: String, nodes: Vec<Node>) -> Self {
        SourceUnit { path, text, nodes }
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn kind(&self, id: NodeId) -> &NodeKind {
        &self.nodes[id.index()].kind
    }

    pub fn span(&self, id: NodeId) -> Span {
        self.nodes[id.index()].span
    }

    pub fn text_of(&self, id: NodeId) -> &str {
        self.span(id).slice(&self.text)
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id.index()].parent
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id.index()].children
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.index() < self.nodes.len()
    }

    /// All node ids in pre-order (which is also source order of start offsets).
    pub fn ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    /// Ids of `id` and everything below it.
    pub fn descendants(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(self.children(n).iter().rev());
        }
        out
    }

    pub fn ancestors(&self, id: NodeId) -> Ancestors<'_> {
        Ancestors { unit: self, next: self.parent(id) }
    }

    pub fn is_ancestor(&self, ancestor: NodeId, of: NodeId) -> bool {
        self.ancestors(of).any(|a| a == ancestor)
    }

    /// 1-based line and column of a byte offset.
    pub fn line_col(&self, offset: usize) -> (usize, usize) {
        line_col(&self.text, offset)
    }

    // Accessors for the common child layouts.

    pub fn method_body(&self, method: NodeId) -> Option<NodeId> {
        self.children(method).last().copied().filter(|c| matches!(self.kind(*c), NodeKind::Block))
    }

    pub fn method_params(&self, method: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.children(method).iter().copied().filter(|c| matches!(self.kind(*c), NodeKind::Param { .. }))
    }

    pub fn invocation_receiver(&self, call: NodeId) -> Option<NodeId> {
        match self.kind(call) {
            NodeKind::MethodInvocation { has_receiver: true, .. } => Some(self.children(call)[0]),
            _ => None,
        }
    }

    pub fn invocation_args(&self, call: NodeId) -> &[NodeId] {
        match self.kind(call) {
            NodeKind::MethodInvocation { has_receiver: true, .. } => &self.children(call)[1..],
            _ => self.children(call),
        }
    }

    pub fn declarator_init(&self, declarator: NodeId) -> Option<NodeId> {
        self.children(declarator).first().copied()
    }

    pub fn if_parts(&self, if_stmt: NodeId) -> (NodeId, NodeId, Option<NodeId>) {
        let c = self.children(if_stmt);
        (c[0], c[1], c.get(2).copied())
    }

    /// Nearest ancestor-or-self matching `pred`.
    pub fn enclosing(&self, id: NodeId, pred: impl Fn(&NodeKind) -> bool) -> Option<NodeId> {
        if pred(self.kind(id)) {
            return Some(id);
        }
        self.ancestors(id).find(|a| pred(self.kind(*a)))
    }

    /// Whether the node lies inside (or is) an opaque node.
    pub fn in_opaque(&self, id: NodeId) -> bool {
        self.enclosing(id, NodeKind::is_opaque).is_some()
    }

    /// Smallest node whose span contains `span`, preferring deeper nodes.
    pub fn node_covering(&self, span: Span) -> NodeId {
        let mut best = self.root();
        loop {
            let next = self.children(best).iter().copied().find(|c| self.span(*c).contains(span));
            match next {
                Some(c) => best = c,
                None => return best,
            }
        }
    }

    /// Node of the given kind starting exactly at `offset`.
    pub fn find_at(&self, offset: usize, pred: impl Fn(&NodeKind) -> bool) -> Option<NodeId> {
        self.ids().find(|id| self.span(*id).start == offset && pred(self.kind(*id)))
    }
}

pub struct Ancestors<'a> {
    unit: &'a SourceUnit,
    next: Option<NodeId>,
}

impl Iterator for Ancestors<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let cur = self.next?;
        self.next = self.unit.parent(cur);
        Some(cur)
    }
}

pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.bytes().filter(|b| *b == b'\n').count() + 1;
    let col = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
    (line, col)
}
