//! Recursive-descent parser for the supported Java subset.
//!
//! Anything outside the subset (loops, try, switch, lambdas, anonymous
//! classes, casts, array expressions, ...) is captured as a single opaque
//! node spanning its balanced token range. The parser builds an owned tree
//! first and flattens it into the pre-order arena of [`SourceUnit`].

use super::lexer::{tokenize, Token, TokenKind};
use super::tree::{Ident, LiteralKind, Modifiers, Node, NodeId, NodeKind, SourceUnit, Span};
use super::ParseError;

const MODIFIER_KEYWORDS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "sealed",
    "non-sealed",
];

const PRIMITIVES: &[&str] = &["int", "long", "short", "byte", "char", "boolean", "float", "double", "void"];

const OPAQUE_STATEMENT_KEYWORDS: &[&str] = &["for", "while", "do", "try", "switch", "synchronized", "throw", "break", "continue", "assert"];

const RESERVED: &[&str] = &[
    "if",
    "else",
    "return",
    "for",
    "while",
    "do",
    "try",
    "catch",
    "finally",
    "switch",
    "case",
    "throw",
    "break",
    "continue",
    "assert",
    "new",
    "class",
    "interface",
    "enum",
    "import",
    "package",
    "instanceof",
];

/// Parse a full source file (or a statement/method snippet).
pub fn parse(text: &str) -> Result<SourceUnit, ParseError> {
    parse_with_path(text, None)
}

pub fn parse_with_path(text: &str, path: Option<String>) -> Result<SourceUnit, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { text, tokens, pos: 0 };
    let root = p.compilation_unit(false)?;
    Ok(flatten(path, text, root))
}

/// Parse text consisting of class-body members (methods, fields, nested classes).
pub fn parse_members(text: &str) -> Result<SourceUnit, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { text, tokens, pos: 0 };
    let root = p.compilation_unit(true)?;
    Ok(flatten(None, text, root))
}

/// Parse a single expression. The returned unit's root has exactly one child.
pub fn parse_expression(text: &str) -> Result<SourceUnit, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { text, tokens, pos: 0 };
    let e = p.expr()?;
    if p.tok(0).is_some() {
        return Err(p.error_here("unexpected trailing input"));
    }
    Ok(flatten(None, text, PNode::new(NodeKind::CompilationUnit, Span::new(0, text.len()), vec![e])))
}

struct PNode {
    kind: NodeKind,
    span: Span,
    children: Vec<PNode>,
}

impl PNode {
    fn new(kind: NodeKind, span: Span, children: Vec<PNode>) -> Self {
        PNode { kind, span, children }
    }

    fn leaf(kind: NodeKind, span: Span) -> Self {
        PNode { kind, span, children: Vec::new() }
    }
}

fn flatten(path: Option<String>, text: &str, root: PNode) -> SourceUnit {
    fn push(nodes: &mut Vec<Node>, node: PNode, parent: Option<NodeId>) -> NodeId {
        let id = NodeId(nodes.len() as u32);
        nodes.push(Node { kind: node.kind, span: node.span, parent, children: Vec::new() });
        let ids: Vec<NodeId> = node.children.into_iter().map(|c| push(nodes, c, Some(id))).collect();
        nodes[id.index()].children = ids;
        id
    }
    let mut nodes = Vec::new();
    push(&mut nodes, root, None);
    SourceUnit::from_nodes(path, text.to_string(), nodes)
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    // ---- token helpers -------------------------------------------------

    fn tok(&self, ahead: usize) -> Option<Token> {
        self.tokens.get(self.pos + ahead).copied()
    }

    fn tok_text(&self, t: Token) -> &'a str {
        t.span.slice(self.text)
    }

    fn at(&self, s: &str) -> bool {
        self.at_ahead(0, s)
    }

    fn at_ahead(&self, ahead: usize, s: &str) -> bool {
        self.tok(ahead).is_some_and(|t| self.tok_text(t) == s && t.kind != TokenKind::Str)
    }

    fn at_ident(&self) -> bool {
        self.tok(0).is_some_and(|t| t.kind == TokenKind::Ident)
    }

    fn at_name(&self) -> bool {
        self.tok(0).is_some_and(|t| t.kind == TokenKind::Ident && !RESERVED.contains(&self.tok_text(t)))
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos];
        self.pos += 1;
        t
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.at(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> PResult<Token> {
        if self.at(s) {
            Ok(self.bump())
        } else {
            Err(self.error_here(format!("expected `{s}`")))
        }
    }

    fn expect_name(&mut self) -> PResult<Ident> {
        if self.at_name() {
            let t = self.bump();
            Ok(Ident { text: self.tok_text(t).to_string(), span: t.span })
        } else {
            Err(self.error_here("expected identifier"))
        }
    }

    fn error_here(&self, msg: impl Into<String>) -> ParseError {
        let msg = msg.into();
        match self.tok(0) {
            Some(t) => ParseError::at(self.text, t.span.start, format!("{msg}, found `{}`", self.tok_text(t))),
            None => ParseError::at(self.text, self.text.len(), format!("{msg}, found end of input")),
        }
    }

    fn start(&self) -> usize {
        self.tok(0).map_or(self.text.len(), |t| t.span.start)
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.tokens[self.pos - 1].span.end
        }
    }

    fn adjacent(&self, ahead: usize) -> bool {
        match (self.tok(ahead), self.tok(ahead + 1)) {
            (Some(a), Some(b)) => a.span.end == b.span.start,
            _ => false,
        }
    }

    /// Skip a balanced group starting at the current open delimiter.
    fn skip_balanced(&mut self) -> PResult<()> {
        let open_tok = self.bump();
        let mut stack = vec![self.tok_text(open_tok)];
        while let Some(last) = stack.last().copied() {
            let Some(t) = self.tok(0) else {
                return Err(ParseError::at(self.text, open_tok.span.start, format!("unclosed `{last}`")));
            };
            self.pos += 1;
            if t.kind != TokenKind::Punct {
                continue;
            }
            match self.tok_text(t) {
                s @ ("(" | "[" | "{") => stack.push(s),
                s @ (")" | "]" | "}") => {
                    let expected = match stack.pop().unwrap() {
                        "(" => ")",
                        "[" => "]",
                        _ => "}",
                    };
                    if s != expected {
                        return Err(ParseError::at(self.text, t.span.start, format!("mismatched `{s}`, expected `{expected}`")));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Skip `<...>` type arguments/parameters.
    fn skip_angles(&mut self) -> PResult<()> {
        let open = self.expect("<")?;
        let mut depth = 1;
        while depth > 0 {
            let Some(t) = self.tok(0) else {
                return Err(ParseError::at(self.text, open.span.start, "unclosed `<`"));
            };
            match self.tok_text(t) {
                "<" => depth += 1,
                ">" => depth -= 1,
                "<<" => depth += 2,
                "(" | "[" | "{" => {
                    self.skip_balanced()?;
                    continue;
                }
                ";" | "{}" => return Err(ParseError::at(self.text, t.span.start, "malformed type arguments")),
                _ => {}
            }
            self.pos += 1;
        }
        Ok(())
    }

    // ---- top level -----------------------------------------------------

    fn compilation_unit(&mut self, members_only: bool) -> PResult<PNode> {
        let mut items = Vec::new();
        while self.tok(0).is_some() {
            if self.at("}") || self.at(")") || self.at("]") {
                return Err(self.error_here("unbalanced closing delimiter"));
            }
            if members_only {
                if let Some(m) = self.member(false)? {
                    items.push(m);
                }
            } else if let Some(item) = self.top_item()? {
                items.push(item);
            }
        }
        Ok(PNode::new(NodeKind::CompilationUnit, Span::new(0, self.text.len()), items))
    }

    fn top_item(&mut self) -> PResult<Option<PNode>> {
        if self.at("package") || self.at("import") {
            let start = self.start();
            let is_package = self.at("package");
            self.bump();
            self.eat("static");
            let path_start = self.start();
            while self.tok(0).is_some() && !self.at(";") {
                self.bump();
            }
            let path = self.text[path_start..self.prev_end().max(path_start)].split_whitespace().collect::<String>();
            self.expect(";")?;
            return Ok(Some(PNode::leaf(NodeKind::Import { path, is_package }, Span::new(start, self.prev_end()))));
        }
        if self.at(";") {
            self.bump();
            return Ok(None);
        }
        if self.looks_like_type_decl() || self.looks_like_method_header() {
            return self.member(true);
        }
        self.statement().map(Some)
    }

    fn looks_like_type_decl(&self) -> bool {
        let mut i = 0;
        loop {
            let Some(t) = self.tok(i) else { return false };
            let s = self.tok_text(t);
            if s == "@" {
                if self.at_ahead(i + 1, "interface") {
                    return true;
                }
                // annotation name, optional args
                i += 2;
                while self.at_ahead(i, ".") {
                    i += 2;
                }
                if self.at_ahead(i, "(") {
                    let mut depth = 0;
                    while let Some(t) = self.tok(i) {
                        match self.tok_text(t) {
                            "(" => depth += 1,
                            ")" => {
                                depth -= 1;
                                if depth == 0 {
                                    break;
                                }
                            }
                            _ => {}
                        }
                        i += 1;
                    }
                    i += 1;
                }
                continue;
            }
            if MODIFIER_KEYWORDS.contains(&s) && s != "final" && s != "synchronized" {
                return true;
            }
            if s == "final" {
                i += 1;
                continue;
            }
            return matches!(s, "class" | "interface" | "enum")
                || (s == "record" && self.tok(i + 1).is_some_and(|t| t.kind == TokenKind::Ident) && self.at_ahead(i + 2, "("));
        }
    }

    fn looks_like_method_header(&mut self) -> bool {
        let save = self.pos;
        let result = (|| -> PResult<bool> {
            self.modifiers()?;
            if self.at("<") {
                self.skip_angles()?;
            }
            if !(self.at_name() && self.at_ahead(1, "(")) {
                if self.parse_type_text().is_none() {
                    return Ok(false);
                }
                if !(self.at_name() && self.at_ahead(1, "(")) {
                    return Ok(false);
                }
            }
            self.bump();
            self.skip_balanced()?;
            while self.at("[") && self.at_ahead(1, "]") {
                self.pos += 2;
            }
            Ok(self.at("{") || self.at("throws"))
        })()
        .unwrap_or(false);
        self.pos = save;
        result
    }

    fn modifiers(&mut self) -> PResult<Modifiers> {
        let mut mods = Modifiers::default();
        let mut first: Option<usize> = None;
        loop {
            if self.at("@") && !self.at_ahead(1, "interface") {
                first.get_or_insert(self.start());
                self.bump();
                self.expect_name()?;
                while self.at(".") && self.tok(1).is_some_and(|t| t.kind == TokenKind::Ident) {
                    self.pos += 2;
                }
                if self.at("(") {
                    self.skip_balanced()?;
                }
                continue;
            }
            if let Some(t) = self.tok(0) {
                let s = self.tok_text(t);
                if MODIFIER_KEYWORDS.contains(&s) && t.kind == TokenKind::Ident {
                    // `default:` inside switch never reaches here; `default` as a method modifier does.
                    first.get_or_insert(t.span.start);
                    self.bump();
                    mods.keywords.push(Ident { text: s.to_string(), span: t.span });
                    continue;
                }
            }
            break;
        }
        if let Some(s) = first {
            mods.span = Some(Span::new(s, self.prev_end()));
        }
        Ok(mods)
    }

    /// Consume a type and return its canonical text, or `None` (position
    /// restored) when the tokens do not form a type.
    fn parse_type_text(&mut self) -> Option<String> {
        let save = self.pos;
        let r = self.type_text_inner();
        if r.is_none() {
            self.pos = save;
        }
        r
    }

    fn type_text_inner(&mut self) -> Option<String> {
        let mut out = String::new();
        while self.at("@") {
            // type annotation
            self.bump();
            if !self.at_ident() {
                return None;
            }
            self.bump();
        }
        if !self.at_ident() {
            return None;
        }
        let first = self.tok_text(self.tok(0)?);
        if RESERVED.contains(&first) || MODIFIER_KEYWORDS.contains(&first) {
            return None;
        }
        loop {
            let t = self.bump();
            out.push_str(self.tok_text(t));
            if self.at("<") {
                out.push_str(&self.type_args_text()?);
            }
            if self.at(".") && self.tok(1).is_some_and(|t| t.kind == TokenKind::Ident) {
                self.bump();
                out.push('.');
                continue;
            }
            break;
        }
        while self.at("[") && self.at_ahead(1, "]") {
            self.pos += 2;
            out.push_str("[]");
        }
        Some(out)
    }

    fn type_args_text(&mut self) -> Option<String> {
        let mut out = String::from("<");
        self.bump();
        if self.eat(">") {
            out.push('>');
            return Some(out);
        }
        loop {
            if self.eat("?") {
                out.push('?');
                if self.at("extends") || self.at("super") {
                    let t = self.bump();
                    let kw = self.tok_text(t);
                    out.push(' ');
                    out.push_str(kw);
                    out.push(' ');
                    out.push_str(&self.type_text_inner()?);
                }
            } else {
                out.push_str(&self.type_text_inner()?);
            }
            while self.at("&") {
                self.bump();
                out.push_str(" & ");
                out.push_str(&self.type_text_inner()?);
            }
            if self.eat(",") {
                out.push_str(", ");
                continue;
            }
            if self.eat(">") {
                out.push('>');
                return Some(out);
            }
            return None;
        }
    }

    // ---- declarations --------------------------------------------------

    /// One class-body member. `None` for stray semicolons.
    fn member(&mut self, top_level: bool) -> PResult<Option<PNode>> {
        let start = self.start();
        if self.eat(";") {
            return Ok(None);
        }
        if self.at("{") || (self.at("static") && self.at_ahead(1, "{")) {
            self.eat("static");
            self.skip_balanced()?;
            return Ok(Some(PNode::leaf(NodeKind::OpaqueStmt, Span::new(start, self.prev_end()))));
        }
        let mods = self.modifiers()?;
        if self.at("class")
            || self.at("interface")
            || self.at("enum")
            || (self.at("@") && self.at_ahead(1, "interface"))
            || (self.at("record") && self.tok(1).is_some_and(|t| t.kind == TokenKind::Ident))
        {
            return self.type_decl(start, mods).map(Some);
        }
        if self.at("<") {
            self.skip_angles()?;
        }
        if self.at_name() && self.at_ahead(1, "(") {
            // constructor
            let name = self.expect_name()?;
            return self.method_rest(start, mods, name, None).map(Some);
        }
        let Some(ty) = self.parse_type_text() else {
            if top_level {
                return self.statement().map(Some);
            }
            return Err(self.error_here("expected member declaration"));
        };
        let name = self.expect_name()?;
        if self.at("(") {
            return self.method_rest(start, mods, name, Some(ty)).map(Some);
        }
        let mut declarators = vec![self.declarator_rest(name)?];
        while self.eat(",") {
            let name = self.expect_name()?;
            declarators.push(self.declarator_rest(name)?);
        }
        self.expect(";")?;
        Ok(Some(PNode::new(NodeKind::FieldDecl { ty, modifiers: mods }, Span::new(start, self.prev_end()), declarators)))
    }

    fn type_decl(&mut self, start: usize, modifiers: Modifiers) -> PResult<PNode> {
        let keyword = if self.at("@") {
            self.pos += 2;
            "@interface".to_string()
        } else {
            let t = self.bump();
            self.tok_text(t).to_string()
        };
        let name = self.expect_name()?;
        // Header: type params, extends/implements/permits, record components.
        while !self.at("{") {
            if self.tok(0).is_none() {
                return Err(ParseError::at(self.text, start, format!("truncated `{keyword}` declaration")));
            }
            if self.at("(") || self.at("[") {
                self.skip_balanced()?;
            } else if self.at(";") || self.at("}") {
                return Err(self.error_here(format!("malformed `{keyword}` header")));
            } else {
                self.bump();
            }
        }
        let open = self.bump();
        let mut members = Vec::new();
        if keyword == "enum" {
            let cstart = self.start();
            let mut any = false;
            while !self.at(";") && !self.at("}") {
                if self.tok(0).is_none() {
                    return Err(ParseError::at(self.text, open.span.start, "unclosed `{`"));
                }
                any = true;
                if self.at("(") || self.at("{") || self.at("[") {
                    self.skip_balanced()?;
                } else {
                    self.bump();
                }
            }
            self.eat(";");
            if any {
                members.push(PNode::leaf(NodeKind::OpaqueStmt, Span::new(cstart, self.prev_end())));
            }
        }
        loop {
            if self.eat("}") {
                break;
            }
            if self.tok(0).is_none() {
                return Err(ParseError::at(self.text, open.span.start, "unclosed `{`"));
            }
            if let Some(m) = self.member(false)? {
                members.push(m);
            }
        }
        Ok(PNode::new(NodeKind::ClassDecl { name, keyword, modifiers }, Span::new(start, self.prev_end()), members))
    }

    fn method_rest(&mut self, start: usize, modifiers: Modifiers, name: Ident, return_type: Option<String>) -> PResult<PNode> {
        let open = self.expect("(")?;
        let mut children = Vec::new();
        if !self.eat(")") {
            loop {
                children.push(self.param()?);
                if self.eat(",") {
                    continue;
                }
                if self.tok(0).is_none() {
                    return Err(ParseError::at(self.text, open.span.start, "unclosed `(`"));
                }
                self.expect(")")?;
                break;
            }
        }
        while self.at("[") && self.at_ahead(1, "]") {
            self.pos += 2;
        }
        if self.eat("throws") {
            while !self.at("{") && !self.at(";") {
                if self.tok(0).is_none() {
                    return Err(ParseError::at(self.text, start, "truncated method declaration"));
                }
                self.bump();
            }
        }
        if self.eat("default") {
            while !self.at(";") {
                if self.tok(0).is_none() {
                    return Err(ParseError::at(self.text, start, "truncated method declaration"));
                }
                if self.at("(") || self.at("{") {
                    self.skip_balanced()?;
                } else {
                    self.bump();
                }
            }
        }
        if self.at("{") {
            children.push(self.block()?);
        } else if !self.eat(";") {
            if self.tok(0).is_none() {
                return Err(ParseError::at(self.text, start, "truncated method declaration"));
            }
            return Err(self.error_here("expected method body"));
        }
        Ok(PNode::new(NodeKind::MethodDecl { name, return_type, modifiers }, Span::new(start, self.prev_end()), children))
    }

    fn param(&mut self) -> PResult<PNode> {
        let start = self.start();
        self.modifiers()?;
        let Some(mut ty) = self.parse_type_text() else {
            return Err(self.error_here("expected parameter type"));
        };
        if self.eat("...") {
            ty.push_str("...");
        }
        let name = if self.at("this") {
            let t = self.bump();
            Ident { text: "this".into(), span: t.span }
        } else {
            self.expect_name()?
        };
        while self.at("[") && self.at_ahead(1, "]") {
            self.pos += 2;
            ty.push_str("[]");
        }
        Ok(PNode::leaf(NodeKind::Param { name, ty }, Span::new(start, self.prev_end())))
    }

    fn declarator_rest(&mut self, name: Ident) -> PResult<PNode> {
        let start = name.span.start;
        while self.at("[") && self.at_ahead(1, "]") {
            self.pos += 2;
        }
        let mut children = Vec::new();
        if self.eat("=") {
            if self.at("{") {
                let s = self.start();
                self.skip_balanced()?;
                children.push(PNode::leaf(NodeKind::OpaqueExpr, Span::new(s, self.prev_end())));
            } else {
                children.push(self.expr()?);
            }
        }
        Ok(PNode::new(NodeKind::Declarator { name }, Span::new(start, self.prev_end()), children))
    }

    // ---- statements ----------------------------------------------------

    fn block(&mut self) -> PResult<PNode> {
        let open = self.expect("{")?;
        let mut stmts = Vec::new();
        loop {
            if self.eat("}") {
                break;
            }
            if self.tok(0).is_none() {
                return Err(ParseError::at(self.text, open.span.start, "unclosed `{`"));
            }
            stmts.push(self.statement()?);
        }
        Ok(PNode::new(NodeKind::Block, Span::new(open.span.start, self.prev_end()), stmts))
    }

    fn statement(&mut self) -> PResult<PNode> {
        let start = self.start();
        let Some(t) = self.tok(0) else {
            return Err(self.error_here("expected statement"));
        };
        let s = self.tok_text(t);
        if t.kind == TokenKind::Punct {
            match s {
                "{" => return self.block(),
                ";" => {
                    self.bump();
                    return Ok(PNode::leaf(NodeKind::OpaqueStmt, t.span));
                }
                "@" => return self.local_var_decl(),
                _ => return self.expr_stmt(),
            }
        }
        if t.kind != TokenKind::Ident {
            return self.expr_stmt();
        }
        match s {
            "if" => return self.if_stmt(),
            "return" => {
                self.bump();
                let mut children = Vec::new();
                if !self.at(";") {
                    children.push(self.expr()?);
                }
                self.expect(";")?;
                return Ok(PNode::new(NodeKind::ReturnStmt, Span::new(start, self.prev_end()), children));
            }
            "else" | "case" | "catch" | "finally" => {
                return Err(self.error_here(format!("unexpected `{s}`")));
            }
            "class" | "interface" | "enum" | "abstract" | "static" => {
                // local type declaration
                while !self.at("{") {
                    if self.tok(0).is_none() {
                        return Err(ParseError::at(self.text, start, "truncated local class declaration"));
                    }
                    self.bump();
                }
                self.skip_balanced()?;
                return Ok(PNode::leaf(NodeKind::OpaqueStmt, Span::new(start, self.prev_end())));
            }
            "final" => return self.local_var_decl(),
            _ => {}
        }
        if OPAQUE_STATEMENT_KEYWORDS.contains(&s) && !(s == "synchronized" && !self.at_ahead(1, "(")) {
            self.skip_statement()?;
            return Ok(PNode::leaf(NodeKind::OpaqueStmt, Span::new(start, self.prev_end())));
        }
        if self.at_ahead(1, ":") {
            // labeled statement
            self.pos += 2;
            self.skip_statement()?;
            return Ok(PNode::leaf(NodeKind::OpaqueStmt, Span::new(start, self.prev_end())));
        }
        if self.looks_like_local_decl() {
            return self.local_var_decl();
        }
        self.expr_stmt()
    }

    fn looks_like_local_decl(&mut self) -> bool {
        let save = self.pos;
        let ok = self.parse_type_text().is_some()
            && self.at_name()
            && matches!(self.tok(1).map(|t| self.tok_text(t)), Some("=" | ";" | "," | "[" | ":"));
        self.pos = save;
        ok
    }

    fn local_var_decl(&mut self) -> PResult<PNode> {
        let start = self.start();
        let modifiers = self.modifiers()?;
        let Some(ty) = self.parse_type_text() else {
            return Err(self.error_here("expected type"));
        };
        let name = self.expect_name()?;
        let mut declarators = vec![self.declarator_rest(name)?];
        while self.eat(",") {
            let name = self.expect_name()?;
            declarators.push(self.declarator_rest(name)?);
        }
        self.expect(";")?;
        Ok(PNode::new(NodeKind::LocalVarDecl { ty, modifiers }, Span::new(start, self.prev_end()), declarators))
    }

    fn expr_stmt(&mut self) -> PResult<PNode> {
        let start = self.start();
        let e = self.expr()?;
        self.expect(";")?;
        Ok(PNode::new(NodeKind::ExprStmt, Span::new(start, self.prev_end()), vec![e]))
    }

    fn if_stmt(&mut self) -> PResult<PNode> {
        let start = self.start();
        self.expect("if")?;
        let open = self.expect("(")?;
        let cond = self.expr()?;
        if !self.eat(")") {
            if self.tok(0).is_none() {
                return Err(ParseError::at(self.text, open.span.start, "unclosed `(`"));
            }
            return Err(self.error_here("expected `)`"));
        }
        let then = self.statement()?;
        let mut children = vec![cond, then];
        if self.eat("else") {
            children.push(self.statement()?);
        }
        Ok(PNode::new(NodeKind::IfStmt, Span::new(start, self.prev_end()), children))
    }

    /// Skip one statement of any shape without building nodes.
    fn skip_statement(&mut self) -> PResult<()> {
        let start = self.start();
        let Some(t) = self.tok(0) else {
            return Err(self.error_here("expected statement"));
        };
        match self.tok_text(t) {
            "{" => self.skip_balanced(),
            "if" => {
                self.bump();
                self.expect_group("(")?;
                self.skip_statement()?;
                if self.eat("else") {
                    self.skip_statement()?;
                }
                Ok(())
            }
            "for" | "while" | "switch" | "synchronized" => {
                self.bump();
                self.expect_group("(")?;
                self.skip_statement()
            }
            "do" => {
                self.bump();
                self.skip_statement()?;
                self.expect("while")?;
                self.expect_group("(")?;
                self.expect(";").map(|_| ())
            }
            "try" => {
                self.bump();
                if self.at("(") {
                    self.skip_balanced()?;
                }
                self.expect_group("{")?;
                let mut handled = false;
                while self.at("catch") {
                    self.bump();
                    self.expect_group("(")?;
                    self.expect_group("{")?;
                    handled = true;
                }
                if self.eat("finally") {
                    self.expect_group("{")?;
                    handled = true;
                }
                if !handled && self.tok(0).is_none() {
                    return Err(ParseError::at(self.text, start, "truncated try statement"));
                }
                Ok(())
            }
            _ => loop {
                let Some(t) = self.tok(0) else {
                    return Err(ParseError::at(self.text, start, "unterminated statement"));
                };
                match self.tok_text(t) {
                    ";" => {
                        self.bump();
                        return Ok(());
                    }
                    "(" | "[" | "{" => self.skip_balanced()?,
                    ")" | "]" | "}" => return Err(self.error_here("unbalanced closing delimiter")),
                    _ => {
                        self.bump();
                    }
                }
            },
        }
    }

    fn expect_group(&mut self, open: &str) -> PResult<()> {
        if !self.at(open) {
            return Err(self.error_here(format!("expected `{open}`")));
        }
        self.skip_balanced()
    }

    // ---- expressions ---------------------------------------------------

    fn expr(&mut self) -> PResult<PNode> {
        let lhs = self.ternary()?;
        if let Some((op, n)) = self.assign_op() {
            self.pos += n;
            let rhs = self.expr()?;
            let span = lhs.span.join(rhs.span);
            return Ok(PNode::new(NodeKind::AssignExpr { op }, span, vec![lhs, rhs]));
        }
        Ok(lhs)
    }

    fn assign_op(&self) -> Option<(String, usize)> {
        let t = self.tok(0)?;
        if t.kind != TokenKind::Punct {
            return None;
        }
        let s = self.tok_text(t);
        match s {
            "=" | "+=" | "-=" | "*=" | "/=" | "%=" | "&=" | "|=" | "^=" | "<<=" => Some((s.to_string(), 1)),
            ">" => {
                // >>= or >>>=
                let mut n = 1;
                let mut op = String::from(">");
                while n < 3 && self.at_ahead(n, ">") && self.adjacent(n - 1) {
                    op.push('>');
                    n += 1;
                }
                if n >= 2 && self.at_ahead(n, "=") && self.adjacent(n - 1) {
                    op.push('=');
                    return Some((op, n + 1));
                }
                None
            }
            _ => None,
        }
    }

    fn ternary(&mut self) -> PResult<PNode> {
        let cond = self.binary(1)?;
        if self.at("?") {
            self.bump();
            self.expr()?;
            self.expect(":")?;
            let last = self.ternary_or_lambda()?;
            return Ok(PNode::leaf(NodeKind::OpaqueExpr, cond.span.join(last.span)));
        }
        Ok(cond)
    }

    fn ternary_or_lambda(&mut self) -> PResult<PNode> {
        self.ternary()
    }

    fn binary_op(&self) -> Option<(String, usize, u8)> {
        let t = self.tok(0)?;
        let s = self.tok_text(t);
        if t.kind == TokenKind::Ident {
            return (s == "instanceof").then(|| (s.to_string(), 1, 7));
        }
        if t.kind != TokenKind::Punct {
            return None;
        }
        let (op, n) = if s == ">" {
            let mut n = 1;
            let mut op = String::from(">");
            while n < 3 && self.at_ahead(n, ">") && self.adjacent(n - 1) {
                op.push('>');
                n += 1;
            }
            if self.at_ahead(n, "=") && self.adjacent(n - 1) {
                if n == 1 {
                    return Some((">=".into(), 2, 7));
                }
                return None; // compound shift assignment
            }
            (op, n)
        } else {
            (s.to_string(), 1)
        };
        let prec = match op.as_str() {
            "||" => 1,
            "&&" => 2,
            "|" => 3,
            "^" => 4,
            "&" => 5,
            "==" | "!=" => 6,
            "<" | ">" | "<=" | ">=" => 7,
            "<<" | ">>" | ">>>" => 8,
            "+" | "-" => 9,
            "*" | "/" | "%" => 10,
            _ => return None,
        };
        Some((op, n, prec))
    }

    fn binary(&mut self, min_prec: u8) -> PResult<PNode> {
        let mut lhs = self.unary()?;
        while let Some((op, n, prec)) = self.binary_op() {
            if prec < min_prec {
                break;
            }
            self.pos += n;
            if op == "instanceof" {
                self.eat("final");
                if self.parse_type_text().is_none() {
                    return Err(self.error_here("expected type after `instanceof`"));
                }
                if self.at_name() {
                    self.bump();
                }
                lhs = PNode::leaf(NodeKind::OpaqueExpr, Span::new(lhs.span.start, self.prev_end()));
                continue;
            }
            let rhs = self.binary(prec + 1)?;
            let span = lhs.span.join(rhs.span);
            lhs = PNode::new(NodeKind::BinaryExpr { op }, span, vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<PNode> {
        let start = self.start();
        if let Some(t) = self.tok(0) {
            if t.kind == TokenKind::Punct {
                let s = self.tok_text(t);
                if s == "-"
                    && self.adjacent(0)
                    && self.tok(1).is_some_and(|n| matches!(n.kind, TokenKind::Int | TokenKind::Float))
                    && !self.at_ahead(2, ".")
                {
                    self.pos += 2;
                    let kind = if self.tokens[self.pos - 1].kind == TokenKind::Int { LiteralKind::Int } else { LiteralKind::Float };
                    let lit = PNode::leaf(NodeKind::Literal(kind), Span::new(start, self.prev_end()));
                    return self.postfix(lit);
                }
                if matches!(s, "!" | "~" | "-" | "+" | "++" | "--") {
                    self.bump();
                    self.unary()?;
                    return Ok(PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end())));
                }
            }
        }
        let prim = self.primary()?;
        self.postfix(prim)
    }

    fn primary(&mut self) -> PResult<PNode> {
        let start = self.start();
        let Some(t) = self.tok(0) else {
            return Err(self.error_here("expected expression"));
        };
        let s = self.tok_text(t);
        match t.kind {
            TokenKind::Int => {
                self.bump();
                return Ok(PNode::leaf(NodeKind::Literal(LiteralKind::Int), t.span));
            }
            TokenKind::Float => {
                self.bump();
                return Ok(PNode::leaf(NodeKind::Literal(LiteralKind::Float), t.span));
            }
            TokenKind::Str => {
                self.bump();
                return Ok(PNode::leaf(NodeKind::Literal(LiteralKind::Str), t.span));
            }
            TokenKind::Char => {
                self.bump();
                return Ok(PNode::leaf(NodeKind::Literal(LiteralKind::Char), t.span));
            }
            TokenKind::Punct => {
                return match s {
                    "(" => self.paren_like(),
                    "{" => {
                        self.skip_balanced()?;
                        Ok(PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end())))
                    }
                    _ => Err(self.error_here("expected expression")),
                };
            }
            TokenKind::Ident => {}
        }
        match s {
            "true" | "false" => {
                self.bump();
                return Ok(PNode::leaf(NodeKind::Literal(LiteralKind::Bool), t.span));
            }
            "null" => {
                self.bump();
                return Ok(PNode::leaf(NodeKind::Literal(LiteralKind::Null), t.span));
            }
            "new" => return self.creation(),
            "switch" => {
                self.bump();
                self.expect_group("(")?;
                self.expect_group("{")?;
                return Ok(PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end())));
            }
            _ => {}
        }
        if PRIMITIVES.contains(&s) {
            // int.class, int[].class, int[]::new
            self.bump();
            while self.at("[") && self.at_ahead(1, "]") {
                self.pos += 2;
            }
            if self.eat(".") {
                self.expect("class")?;
            } else if self.eat("::") {
                self.bump();
            } else {
                return Err(self.error_here("unexpected primitive type"));
            }
            return Ok(PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end())));
        }
        if RESERVED.contains(&s) {
            return Err(self.error_here("expected expression"));
        }
        if self.at_ahead(1, "->") {
            self.pos += 2;
            self.lambda_body()?;
            return Ok(PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end())));
        }
        let t = self.bump();
        let name = Ident { text: s.to_string(), span: t.span };
        if self.at("(") {
            let args = self.arguments()?;
            return Ok(PNode::new(NodeKind::MethodInvocation { name, has_receiver: false }, Span::new(start, self.prev_end()), args));
        }
        Ok(PNode::leaf(NodeKind::NameExpr { name: s.to_string() }, t.span))
    }

    fn lambda_body(&mut self) -> PResult<()> {
        if self.at("{") {
            self.skip_balanced()
        } else {
            self.expr().map(|_| ())
        }
    }

    fn matching_paren(&self) -> Option<usize> {
        let mut depth = 0usize;
        let mut i = self.pos;
        while let Some(t) = self.tokens.get(i) {
            match self.tok_text(*t) {
                "(" | "[" | "{" if t.kind == TokenKind::Punct => depth += 1,
                ")" | "]" | "}" if t.kind == TokenKind::Punct => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(i);
                    }
                }
                _ => {}
            }
            i += 1;
        }
        None
    }

    fn paren_like(&mut self) -> PResult<PNode> {
        let start = self.start();
        let Some(close) = self.matching_paren() else {
            return Err(ParseError::at(self.text, start, "unclosed `(`"));
        };
        if self.tokens.get(close + 1).is_some_and(|t| self.tok_text(*t) == "->") {
            self.pos = close + 2;
            self.lambda_body()?;
            return Ok(PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end())));
        }
        // cast?
        let save = self.pos;
        self.bump();
        if let Some(ty) = self.parse_type_text() {
            let mut ty_ok = true;
            while self.eat("&") {
                ty_ok &= self.parse_type_text().is_some();
            }
            if ty_ok && self.pos == close {
                let next = self.tokens.get(close + 1).copied();
                let primitive = PRIMITIVES.contains(&ty.trim_end_matches("[]"));
                let is_cast = next.is_some_and(|n| match n.kind {
                    TokenKind::Int | TokenKind::Float | TokenKind::Str | TokenKind::Char => true,
                    TokenKind::Ident => !matches!(self.tok_text(n), "instanceof"),
                    TokenKind::Punct => {
                        let ns = self.tok_text(n);
                        matches!(ns, "(" | "!" | "~") || (primitive && matches!(ns, "-" | "+" | "++" | "--"))
                    }
                });
                if is_cast {
                    self.pos = close + 1;
                    self.unary()?;
                    return Ok(PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end())));
                }
            }
        }
        self.pos = save;
        self.bump();
        let inner = self.expr()?;
        self.expect(")")?;
        Ok(PNode::new(NodeKind::Paren, Span::new(start, self.prev_end()), vec![inner]))
    }

    fn arguments(&mut self) -> PResult<Vec<PNode>> {
        let open = self.expect("(")?;
        let mut args = Vec::new();
        if self.eat(")") {
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            if self.eat(",") {
                continue;
            }
            if self.eat(")") {
                return Ok(args);
            }
            if self.tok(0).is_none() {
                return Err(ParseError::at(self.text, open.span.start, "unclosed `(`"));
            }
            return Err(self.error_here("expected `,` or `)`"));
        }
    }

    fn creation(&mut self) -> PResult<PNode> {
        let start = self.start();
        self.expect("new")?;
        while self.at("@") {
            self.pos += 2;
        }
        let ty_start = self.start();
        let mut ty = String::new();
        if !self.at_ident() {
            return Err(self.error_here("expected type after `new`"));
        }
        loop {
            let t = self.bump();
            ty.push_str(self.tok_text(t));
            if self.at("<") {
                match self.type_args_text() {
                    Some(args) => ty.push_str(&args),
                    None => return Err(self.error_here("malformed type arguments")),
                }
            }
            if self.at(".") && self.tok(1).is_some_and(|t| t.kind == TokenKind::Ident) {
                self.bump();
                ty.push('.');
                continue;
            }
            break;
        }
        let ty_span = Span::new(ty_start, self.prev_end());
        if self.at("[") {
            while self.at("[") {
                self.skip_balanced()?;
            }
            if self.at("{") {
                self.skip_balanced()?;
            }
            return Ok(PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end())));
        }
        if !self.at("(") {
            return Err(self.error_here("expected `(` after type in object creation"));
        }
        let args = self.arguments()?;
        if self.at("{") {
            self.skip_balanced()?;
            return Ok(PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end())));
        }
        Ok(PNode::new(NodeKind::ObjectCreation { ty: Ident { text: ty, span: ty_span } }, Span::new(start, self.prev_end()), args))
    }

    fn postfix(&mut self, mut node: PNode) -> PResult<PNode> {
        loop {
            let start = node.span.start;
            if self.at(".") {
                self.bump();
                if self.at("new") {
                    self.creation()?;
                    node = PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end()));
                    continue;
                }
                if self.at("<") {
                    self.skip_angles()?;
                }
                let Some(t) = self.tok(0).filter(|t| t.kind == TokenKind::Ident) else {
                    return Err(self.error_here("expected member name after `.`"));
                };
                self.bump();
                let name = Ident { text: self.tok_text(t).to_string(), span: t.span };
                if self.at("(") {
                    let mut children = vec![node];
                    children.extend(self.arguments()?);
                    node = PNode::new(NodeKind::MethodInvocation { name, has_receiver: true }, Span::new(start, self.prev_end()), children);
                } else {
                    node = PNode::new(NodeKind::FieldAccess { name }, Span::new(start, self.prev_end()), vec![node]);
                }
                continue;
            }
            if self.at("[") {
                if self.at_ahead(1, "]") {
                    while self.at("[") && self.at_ahead(1, "]") {
                        self.pos += 2;
                    }
                    if self.eat(".") {
                        self.expect("class")?;
                    } else if self.eat("::") {
                        self.bump();
                    } else {
                        return Err(self.error_here("expected `.class` or `::` after array type"));
                    }
                } else {
                    self.skip_balanced()?;
                }
                node = PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end()));
                continue;
            }
            if (self.at("++") || self.at("--")) && !self.at_ahead(1, "(") && !self.tok(1).is_some_and(|t| t.kind == TokenKind::Ident) {
                self.bump();
                node = PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end()));
                continue;
            }
            if self.at("::") {
                self.bump();
                if self.at("<") {
                    self.skip_angles()?;
                }
                if !self.at_ident() {
                    return Err(self.error_here("expected method reference name"));
                }
                self.bump();
                node = PNode::leaf(NodeKind::OpaqueExpr, Span::new(start, self.prev_end()));
                continue;
            }
            if self.at("<") && matches!(node.kind, NodeKind::NameExpr { .. } | NodeKind::FieldAccess { .. }) {
                // Generic type followed by `::` (e.g. `List<String>::size`).
                let save = self.pos;
                if self.type_args_text().is_some() && self.at("::") {
                    continue;
                }
                self.pos = save;
            }
            return Ok(node);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(unit: &SourceUnit) -> Vec<&'static str> {
        unit.ids().map(|id| unit.kind(id).label()).collect()
    }

    #[test]
    fn empty_class() {
        let u = parse("class A {}").unwrap();
        assert_eq!(kinds(&u), vec!["CompilationUnit", "ClassDecl"]);
        assert!(u.children(u.children(u.root())[0]).is_empty());
    }

    #[test]
    fn guard_snippet_has_if_with_two_expression_branches() {
        let src = "if (android.os.Build.VERSION.SDK_INT >= \n        android.os.Build.VERSION_CODES.M) {\n    minutes = picker.getMinute();\n} else {\n    minutes = picker.getCurrentMinute();\n}\n";
        let u = parse(src).unwrap();
        let top = u.children(u.root());
        assert_eq!(top.len(), 1);
        assert!(matches!(u.kind(top[0]), NodeKind::IfStmt));
        let (_, then, els) = u.if_parts(top[0]);
        for branch in [then, els.unwrap()] {
            let stmts = u.children(branch);
            assert_eq!(stmts.len(), 1);
            assert!(matches!(u.kind(stmts[0]), NodeKind::ExprStmt));
        }
    }

    #[test]
    fn lambda_statement_is_opaque_expression() {
        let src = "class A { void m(){ list.forEach(x -> f(x)); } }";
        let u = parse(src).unwrap();
        let opaque: Vec<_> = u.ids().filter(|id| u.kind(*id).is_opaque()).collect();
        assert_eq!(opaque.len(), 1);
        assert_eq!(u.text_of(opaque[0]), "x -> f(x)");
        assert_eq!(u.text, src);
    }

    #[test]
    fn loops_become_opaque_statements() {
        let src = "class A { void m(){ for (int i = 0; i < n; i++) { a.b(i); } int x = 1; } }";
        let u = parse(src).unwrap();
        let kinds = kinds(&u);
        assert!(kinds.contains(&"OpaqueStmt"));
        assert!(kinds.contains(&"LocalVarDecl"));
        assert!(!kinds.contains(&"MethodInvocation"));
    }

    #[test]
    fn qualified_inner_class_constructor() {
        let src = "class A { void m(){ Notification.Action action = new Notification.Action.Builder(icon, title, intent).build(); } }";
        let u = parse(src).unwrap();
        let creation = u.ids().find(|id| matches!(u.kind(*id), NodeKind::ObjectCreation { .. })).unwrap();
        match u.kind(creation) {
            NodeKind::ObjectCreation { ty } => assert_eq!(ty.text, "Notification.Action.Builder"),
            _ => unreachable!(),
        }
        assert_eq!(u.children(creation).len(), 3);
    }

    #[test]
    fn generics_and_shifts() {
        let u = parse("class A { Map<String, List<Integer>> m = new HashMap<>(); int s = a >> 2; boolean b = x >= y; }").unwrap();
        let ops: Vec<_> = u
            .ids()
            .filter_map(|id| match u.kind(id) {
                NodeKind::BinaryExpr { op } => Some(op.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(ops, vec![">>", ">="]);
        let field_types: Vec<_> = u
            .ids()
            .filter_map(|id| match u.kind(id) {
                NodeKind::FieldDecl { ty, .. } => Some(ty.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(field_types[0], "Map<String, List<Integer>>");
    }

    #[test]
    fn casts_and_parens() {
        let u = parse("class A { void m(){ int a = (int) x; int b = (c + d) * e; TimePicker t = (TimePicker) findViewById(R.id.t); } }")
            .unwrap();
        let opaque: Vec<_> = u.ids().filter(|id| matches!(u.kind(*id), NodeKind::OpaqueExpr)).map(|id| u.text_of(id)).collect();
        assert_eq!(opaque, vec!["(int) x", "(TimePicker) findViewById(R.id.t)"]);
        assert!(u.ids().any(|id| matches!(u.kind(id), NodeKind::Paren)));
    }

    #[test]
    fn negative_literal() {
        let u = parse("x = -5;").unwrap();
        assert!(u.ids().any(|id| matches!(u.kind(id), NodeKind::Literal(LiteralKind::Int)) && u.text_of(id) == "-5"));
    }

    #[test]
    fn unbalanced_brace_is_an_error_with_position() {
        let err = parse("class A {\n  void m() {\n    f();\n}\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("unclosed"), "{}", err.message);
        let err = parse("class A { }\n}").unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
    }

    #[test]
    fn truncated_declaration_is_an_error() {
        assert!(parse("class A { void m(int a").is_err());
        assert!(parse("class A { int x = ").is_err());
    }

    #[test]
    fn method_snippet_at_top_level() {
        let u = parse("public void setTimeH(TimePicker tp, int hour) {\n    tp.setCurrentHour(hour);\n}\n").unwrap();
        let top = u.children(u.root());
        assert!(matches!(u.kind(top[0]), NodeKind::MethodDecl { .. }));
        assert_eq!(u.method_params(top[0]).count(), 2);
    }

    #[test]
    fn anonymous_class_and_try_are_opaque() {
        let src = r#"
class A {
    private final Runnable r = new Runnable() { public void run() { go(); } };
    void m() {
        try { a(); } catch (Exception e) { b(); } finally { c(); }
        switch (x) { case 1: y(); break; default: z(); }
        label: while (true) { break label; }
        do { i++; } while (i < 3);
        synchronized (this) { q(); }
    }
}
"#;
        let u = parse(src).unwrap();
        assert!(!u.ids().any(|id| matches!(u.kind(id), NodeKind::MethodInvocation { .. })));
    }

    #[test]
    fn enum_and_interface() {
        let src = "enum Color { RED, GREEN(1) { }; int v() { return 1; } }\ninterface I { void f(); default int g() { return 2; } }";
        let u = parse(src).unwrap();
        let classes = u.ids().filter(|id| matches!(u.kind(*id), NodeKind::ClassDecl { .. })).count();
        assert_eq!(classes, 2);
        let methods = u.ids().filter(|id| matches!(u.kind(*id), NodeKind::MethodDecl { .. })).count();
        assert_eq!(methods, 3);
    }
}
