//! Intra-file value resolution for API arguments.
//!
//! Names are chased backwards to the assignment or declaration that gives
//! them their value (local assignments first, then parameters, then field
//! initializers of enclosing classes) and substituted structurally, so
//! `duration / frequency` becomes `9 / 3` rather than `3`. Method and class
//! declarations the resolved expression refers to are collected so they can
//! be copied alongside it.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::syntax::lexer::{tokenize, TokenKind};
use crate::syntax::query::{self, class_path, enclosing_method, find_declaration, DeclSite};
use crate::syntax::{Expr, NodeId, NodeKind, SourceUnit, Span};

pub const MAX_DEPTH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnresolvedReason {
    ExternalToFile,
    AmbiguousAssignment,
    Cycle,
    UnsupportedConstruct,
}

impl fmt::Display for UnresolvedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnresolvedReason::ExternalToFile => "external-to-file",
            UnresolvedReason::AmbiguousAssignment => "ambiguous-assignment",
            UnresolvedReason::Cycle => "cycle",
            UnresolvedReason::UnsupportedConstruct => "unsupported-construct",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Unresolved {
    pub name: String,
    pub reason: UnresolvedReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefinitionKind {
    Method,
    Class,
}

impl fmt::Display for DefinitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DefinitionKind::Method => "method",
            DefinitionKind::Class => "class",
        })
    }
}

/// A complete method or class declaration taken verbatim from a unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Definition {
    pub kind: DefinitionKind,
    /// `Outer.Inner` for classes, `Outer.method` for methods.
    pub qualified_name: String,
    pub text: String,
    /// Where the declaration sits in its source unit.
    pub span: Span,
}

impl Definition {
    pub fn simple_name(&self) -> &str {
        self.qualified_name.rsplit('.').next().unwrap_or(&self.qualified_name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedValue {
    pub expression: Expr,
    pub required_definitions: Vec<Definition>,
    pub unresolved: Vec<Unresolved>,
    pub diagnostics: Vec<String>,
}

/// What a name at a use site refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding {
    /// A declarator or assignment (`site`) providing `value`.
    Value {
        site: NodeId,
        value: NodeId,
    },
    Param(NodeId),
    Unresolved(UnresolvedReason),
}

pub fn resolve_name(unit: &SourceUnit, name: &str, use_site: NodeId) -> Binding {
    let use_span = unit.span(use_site);
    let method = enclosing_method(unit, use_site);
    let in_class = query::enclosing_class(unit, use_site).is_some();
    // Locals are searched in the enclosing method, or in a top-level snippet.
    let scope = match (method, in_class) {
        (Some(m), _) => Some(m),
        (None, false) => Some(unit.root()),
        (None, true) => None,
    };
    if let Some(scope) = scope {
        let mut nearest: Option<(usize, NodeId, Option<NodeId>)> = None;
        for id in unit.descendants(scope) {
            let span = unit.span(id);
            if span.start >= use_span.start || span.contains(use_span) {
                continue;
            }
            let candidate = match unit.kind(id) {
                NodeKind::Declarator { name: n } if n.text == name => {
                    let decl = unit.parent(id).unwrap();
                    let visible = matches!(unit.kind(decl), NodeKind::LocalVarDecl { .. })
                        && unit.parent(decl).is_some_and(|b| unit.span(b).contains(use_span));
                    visible.then(|| unit.declarator_init(id))
                }
                NodeKind::AssignExpr { op } if assigns_name(unit, id, name) => {
                    if op != "=" {
                        return Binding::Unresolved(UnresolvedReason::UnsupportedConstruct);
                    }
                    Some(Some(unit.children(id)[1]))
                }
                _ => None,
            };
            if let Some(value) = candidate {
                if nearest.is_none_or(|(s, _, _)| span.start > s) {
                    nearest = Some((span.start, id, value));
                }
            }
        }
        let after = nearest.map_or(unit.span(scope).start, |(s, _, _)| s);
        let hidden_write = unit.descendants(scope).into_iter().any(|id| {
            let span = unit.span(id);
            unit.kind(id).is_opaque() && span.start > after && span.end <= use_span.start && opaque_writes(unit.text_of(id), name)
        });
        if hidden_write {
            return Binding::Unresolved(UnresolvedReason::UnsupportedConstruct);
        }
        if let Some((_, site, value)) = nearest {
            let conditional = unit
                .ancestors(site)
                .take_while(|a| Some(*a) != method)
                .any(|a| matches!(unit.kind(a), NodeKind::IfStmt) && !unit.span(a).contains(use_span));
            if conditional {
                return Binding::Unresolved(UnresolvedReason::AmbiguousAssignment);
            }
            return match value {
                Some(value) => Binding::Value { site, value },
                None => Binding::Unresolved(UnresolvedReason::UnsupportedConstruct),
            };
        }
    }
    if let Some(m) = method {
        for p in unit.method_params(m) {
            if matches!(unit.kind(p), NodeKind::Param { name: n, .. } if n.text == name) {
                return Binding::Param(p);
            }
        }
    }
    for class in unit.ancestors(use_site).filter(|a| matches!(unit.kind(*a), NodeKind::ClassDecl { .. })) {
        if let Some(d) = query::field_declarator(unit, class, name) {
            return field_binding(unit, class, d, name);
        }
    }
    Binding::Unresolved(UnresolvedReason::ExternalToFile)
}

fn field_binding(unit: &SourceUnit, class: NodeId, declarator: NodeId, name: &str) -> Binding {
    if let Some(init) = unit.declarator_init(declarator) {
        return Binding::Value { site: declarator, value: init };
    }
    let assignments: Vec<NodeId> = unit
        .descendants(class)
        .into_iter()
        .filter(|id| matches!(unit.kind(*id), NodeKind::AssignExpr { .. }) && assigns_field(unit, *id, name))
        .collect();
    match assignments.as_slice() {
        [] => Binding::Unresolved(UnresolvedReason::ExternalToFile),
        [one] if matches!(unit.kind(*one), NodeKind::AssignExpr { op } if op == "=") => {
            Binding::Value { site: *one, value: unit.children(*one)[1] }
        }
        [_] => Binding::Unresolved(UnresolvedReason::UnsupportedConstruct),
        _ => Binding::Unresolved(UnresolvedReason::AmbiguousAssignment),
    }
}

fn assigns_name(unit: &SourceUnit, assign: NodeId, name: &str) -> bool {
    let lhs = unit.children(assign)[0];
    matches!(unit.kind(lhs), NodeKind::NameExpr { name: n } if n == name)
}

/// Assignment to field `name` as `name = ...` (not shadowed) or `this.name = ...`.
fn assigns_field(unit: &SourceUnit, assign: NodeId, name: &str) -> bool {
    let lhs = unit.children(assign)[0];
    match unit.kind(lhs) {
        NodeKind::NameExpr { name: n } if n == name => {
            !matches!(find_declaration(unit, name, assign), Some(DeclSite::Local { .. } | DeclSite::Param(_)))
        }
        NodeKind::FieldAccess { name: n } if n.text == name => {
            matches!(unit.kind(unit.children(lhs)[0]), NodeKind::NameExpr { name: t } if t == "this")
        }
        _ => false,
    }
}

/// Whether opaque text may write `name` (`name = `, `name += `, `name++`, ...).
fn opaque_writes(text: &str, name: &str) -> bool {
    let Ok(tokens) = tokenize(text) else { return true };
    let t: Vec<&str> = tokens.iter().map(|t| t.span.slice(text)).collect();
    for (i, tok) in t.iter().enumerate() {
        if *tok != name || (i > 0 && t[i - 1] == ".") {
            continue;
        }
        if i > 0 && matches!(t[i - 1], "++" | "--") {
            return true;
        }
        match t.get(i + 1).copied() {
            Some("=") => return t.get(i + 2) != Some(&"="),
            Some("+=" | "-=" | "*=" | "/=" | "%=" | "&=" | "|=" | "^=" | "<<=" | "++" | "--") => return true,
            _ => {}
        }
    }
    false
}

const JAVA_WORDS: &[&str] = &[
    "new",
    "this",
    "super",
    "true",
    "false",
    "null",
    "instanceof",
    "int",
    "long",
    "short",
    "byte",
    "char",
    "boolean",
    "float",
    "double",
    "void",
    "class",
    "return",
    "final",
    "var",
    "switch",
    "case",
    "default",
    "yield",
];

pub fn resolve_expression(unit: &SourceUnit, expr: NodeId) -> ResolvedValue {
    let mut r = Resolver { unit, visiting: HashSet::new(), depth: 0, unresolved: Vec::new(), diagnostics: Vec::new() };
    let expression = r.expr(expr);
    let collected = collect_required_definitions(unit, &expression);
    let mut diagnostics = r.diagnostics;
    for cycle in &collected.cycles {
        diagnostics.push(format!("definition cycle: {}", cycle.join(" -> ")));
    }
    let mut seen = HashSet::new();
    let unresolved = r.unresolved.into_iter().filter(|u| seen.insert(u.clone())).collect();
    ResolvedValue { expression, required_definitions: collected.definitions, unresolved, diagnostics }
}

struct Resolver<'a> {
    unit: &'a SourceUnit,
    visiting: HashSet<(String, usize)>,
    depth: usize,
    unresolved: Vec<Unresolved>,
    diagnostics: Vec<String>,
}

impl Resolver<'_> {
    fn expr(&mut self, id: NodeId) -> Expr {
        let unit = self.unit;
        if self.depth > MAX_DEPTH {
            self.unresolved.push(Unresolved { name: unit.text_of(id).to_string(), reason: UnresolvedReason::Cycle });
            return Expr::from_node(unit, id);
        }
        match unit.kind(id) {
            NodeKind::Literal(_) => Expr::Literal(unit.text_of(id).to_string()),
            NodeKind::NameExpr { name } => self.name(name, id),
            NodeKind::FieldAccess { name } => self.field_access(id, &name.text),
            NodeKind::MethodInvocation { name, has_receiver } => {
                let receiver = has_receiver.then(|| Box::new(self.operand(unit.children(id)[0])));
                let args = unit.invocation_args(id).iter().map(|a| self.expr(*a)).collect();
                Expr::Call { receiver, name: name.text.clone(), args }
            }
            NodeKind::ObjectCreation { ty } => {
                Expr::New { ty: ty.text.clone(), args: unit.children(id).iter().map(|a| self.expr(*a)).collect() }
            }
            NodeKind::BinaryExpr { op } => {
                let c = unit.children(id);
                Expr::Binary { op: op.clone(), lhs: Box::new(self.operand(c[0])), rhs: Box::new(self.operand(c[1])) }
            }
            NodeKind::Paren => match self.expr(unit.children(id)[0]) {
                e @ Expr::Paren(_) => e,
                e => Expr::Paren(Box::new(e)),
            },
            NodeKind::AssignExpr { .. } => {
                self.unresolved.push(Unresolved { name: unit.text_of(id).to_string(), reason: UnresolvedReason::UnsupportedConstruct });
                Expr::Opaque(unit.text_of(id).to_string())
            }
            _ => {
                let text = unit.text_of(id);
                for name in free_lowercase_identifiers(text) {
                    self.unresolved.push(Unresolved { name, reason: UnresolvedReason::UnsupportedConstruct });
                }
                Expr::Opaque(text.to_string())
            }
        }
    }

    /// Resolve an operand position (binary side, receiver, field target):
    /// substituted binary values get parenthesized.
    fn operand(&mut self, id: NodeId) -> Expr {
        let substituted = matches!(self.unit.kind(id), NodeKind::NameExpr { .. } | NodeKind::FieldAccess { .. });
        let e = self.expr(id);
        if substituted {
            e.parenthesized_if_binary()
        } else {
            e
        }
    }

    fn name(&mut self, name: &str, site: NodeId) -> Expr {
        if name == "this" || name == "super" {
            self.diagnostics.push(format!("`{name}` kept verbatim; it refers to the enclosing instance of the target"));
            return Expr::name(name);
        }
        let key = (name.to_string(), self.unit.span(site).start);
        if self.visiting.contains(&key) {
            self.unresolved.push(Unresolved { name: name.to_string(), reason: UnresolvedReason::Cycle });
            return Expr::name(name);
        }
        match resolve_name(self.unit, name, site) {
            Binding::Value { value, .. } => self.substitute(key, value),
            Binding::Param(_) => {
                self.unresolved.push(Unresolved { name: name.to_string(), reason: UnresolvedReason::ExternalToFile });
                Expr::name(name)
            }
            Binding::Unresolved(reason) => {
                // Capitalised unresolvable names are type references (`Html`, `AudioManager`).
                if !(reason == UnresolvedReason::ExternalToFile && starts_upper(name)) {
                    self.unresolved.push(Unresolved { name: name.to_string(), reason });
                }
                Expr::name(name)
            }
        }
    }

    fn substitute(&mut self, key: (String, usize), value: NodeId) -> Expr {
        self.visiting.insert(key.clone());
        self.depth += 1;
        let e = self.expr(value);
        self.depth -= 1;
        self.visiting.remove(&key);
        e
    }

    fn field_access(&mut self, id: NodeId, name: &str) -> Expr {
        let unit = self.unit;
        let target = unit.children(id)[0];
        if matches!(unit.kind(target), NodeKind::NameExpr { name: t } if t == "this") {
            let key = (name.to_string(), unit.span(id).start);
            if let Some(class) = query::enclosing_class(unit, id) {
                if let Some(d) = query::field_declarator(unit, class, name) {
                    if self.visiting.contains(&key) {
                        self.unresolved.push(Unresolved { name: name.to_string(), reason: UnresolvedReason::Cycle });
                        return Expr::from_node(unit, id);
                    }
                    return match field_binding(unit, class, d, name) {
                        Binding::Value { value, .. } => self.substitute(key, value),
                        Binding::Unresolved(reason) => {
                            self.unresolved.push(Unresolved { name: format!("this.{name}"), reason });
                            Expr::from_node(unit, id)
                        }
                        Binding::Param(_) => unreachable!(),
                    };
                }
            }
            self.unresolved.push(Unresolved { name: format!("this.{name}"), reason: UnresolvedReason::ExternalToFile });
            return Expr::from_node(unit, id);
        }
        let lowered = Expr::from_node(unit, id);
        if let Some(root) = lowered.root_name() {
            let resolvable = find_declaration(unit, root, id).is_some();
            if !resolvable {
                // `Config.DELAY` on an in-file class resolves to the field's initializer.
                if let Expr::Field { target: t, .. } = &lowered {
                    if let Expr::Name(class_name) = &**t {
                        if let Some(value) = static_field_init(unit, class_name, name) {
                            return self.substitute((format!("{class_name}.{name}"), unit.span(id).start), value);
                        }
                    }
                }
                // External qualified name such as `AudioManager.STREAM_MUSIC`.
                if starts_upper(root) || lowered.qualified_name().is_some_and(|q| q.split('.').any(starts_upper)) {
                    return lowered;
                }
            }
        }
        Expr::Field { target: Box::new(self.operand(target)), name: name.to_string() }
    }
}

fn static_field_init(unit: &SourceUnit, class_name: &str, field: &str) -> Option<NodeId> {
    let class = unit.ids().find(|id| matches!(unit.kind(*id), NodeKind::ClassDecl { name, .. } if name.text == class_name))?;
    unit.declarator_init(query::field_declarator(unit, class, field)?)
}

fn starts_upper(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_uppercase)
}

fn free_lowercase_identifiers(text: &str) -> Vec<String> {
    let Ok(tokens) = tokenize(text) else { return Vec::new() };
    let mut out = BTreeSet::new();
    for (i, t) in tokens.iter().enumerate() {
        let s = t.span.slice(text);
        if t.kind != TokenKind::Ident || !s.starts_with(|c: char| c.is_lowercase()) || JAVA_WORDS.contains(&s) {
            continue;
        }
        let after_dot = i > 0 && matches!(tokens[i - 1].span.slice(text), "." | "::");
        let is_call = tokens.get(i + 1).is_some_and(|n| n.span.slice(text) == "(");
        if !after_dot && !is_call {
            out.insert(s.to_string());
        }
    }
    out.into_iter().collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CollectedDefinitions {
    pub definitions: Vec<Definition>,
    /// Each cycle as the chain of qualified names that closes it.
    pub cycles: Vec<Vec<String>>,
}

/// Transitive closure of in-file methods and classes referenced by `expr`.
pub fn collect_required_definitions(unit: &SourceUnit, expr: &Expr) -> CollectedDefinitions {
    let index = DeclIndex::new(unit);
    let mut seeds = Vec::new();
    expr.walk(&mut |e| match e {
        Expr::Call { receiver, name, args } => match receiver.as_deref() {
            None => seeds.extend(index.methods_named(unit, name, args.len())),
            Some(Expr::Name(n)) if n == "this" => seeds.extend(index.methods_named(unit, name, args.len())),
            Some(Expr::Name(c)) if starts_upper(c) => seeds.extend(index.class_named(c)),
            _ => {}
        },
        Expr::New { ty, .. } => seeds.extend(index.class_for_type(ty)),
        _ => {}
    });
    let mut walk = DefWalk { unit, index: &index, order: Vec::new(), stack: Vec::new(), cycles: Vec::new() };
    for s in seeds {
        walk.visit(s);
    }
    let chosen: Vec<NodeId> = walk.order.clone();
    let definitions = chosen
        .iter()
        .copied()
        .filter(|d| !chosen.iter().any(|other| other != d && unit.is_ancestor(*other, *d)))
        .map(|d| definition_of(unit, d))
        .collect();
    CollectedDefinitions { definitions, cycles: walk.cycles }
}

pub fn definition_of(unit: &SourceUnit, decl: NodeId) -> Definition {
    let (kind, qualified_name) = match unit.kind(decl) {
        NodeKind::ClassDecl { .. } => (DefinitionKind::Class, class_path(unit, decl)),
        NodeKind::MethodDecl { name, .. } => {
            let owner = query::enclosing_class(unit, decl).map(|c| class_path(unit, c));
            let q = match owner {
                Some(o) => format!("{o}.{}", name.text),
                None => name.text.clone(),
            };
            (DefinitionKind::Method, q)
        }
        other => panic!("not a declaration: {}", other.label()),
    };
    Definition { kind, qualified_name, text: unit.text_of(decl).to_string(), span: unit.span(decl) }
}

struct DeclIndex {
    methods: Vec<NodeId>,
    classes: Vec<(String, NodeId)>,
}

impl DeclIndex {
    fn new(unit: &SourceUnit) -> Self {
        let mut methods = Vec::new();
        let mut classes = Vec::new();
        for id in unit.ids() {
            match unit.kind(id) {
                NodeKind::MethodDecl { return_type: Some(_), .. } => methods.push(id),
                NodeKind::ClassDecl { .. } => classes.push((class_path(unit, id), id)),
                _ => {}
            }
        }
        DeclIndex { methods, classes }
    }

    fn methods_named(&self, unit: &SourceUnit, name: &str, arity: usize) -> Vec<NodeId> {
        let named: Vec<NodeId> = self
            .methods
            .iter()
            .copied()
            .filter(|m| matches!(unit.kind(*m), NodeKind::MethodDecl { name: n, .. } if n.text == name))
            .collect();
        let exact: Vec<NodeId> = named.iter().copied().filter(|m| unit.method_params(*m).count() == arity).collect();
        if exact.is_empty() {
            named
        } else {
            exact
        }
    }

    fn class_named(&self, name: &str) -> Option<NodeId> {
        self.classes.iter().find(|(path, _)| path == name || path.ends_with(&format!(".{name}"))).map(|(_, id)| *id)
    }

    fn class_for_type(&self, ty: &str) -> Option<NodeId> {
        let base = ty.split('<').next().unwrap_or(ty).trim();
        self.class_named(base)
    }
}

struct DefWalk<'a> {
    unit: &'a SourceUnit,
    index: &'a DeclIndex,
    order: Vec<NodeId>,
    stack: Vec<NodeId>,
    cycles: Vec<Vec<String>>,
}

impl DefWalk<'_> {
    fn visit(&mut self, def: NodeId) {
        let unit = self.unit;
        if let Some(pos) = self.stack.iter().position(|d| *d == def) {
            let mut chain: Vec<String> = self.stack[pos..].iter().map(|d| definition_of(unit, *d).qualified_name).collect();
            chain.push(definition_of(unit, def).qualified_name);
            self.cycles.push(chain);
            return;
        }
        if self.order.contains(&def) {
            return;
        }
        self.order.push(def);
        self.stack.push(def);
        let mut refs = Vec::new();
        for id in unit.descendants(def) {
            match unit.kind(id) {
                NodeKind::MethodInvocation { name, has_receiver } => {
                    let receiver = has_receiver.then(|| unit.children(id)[0]);
                    match receiver.map(|r| unit.kind(r)) {
                        None => refs.extend(self.index.methods_named(unit, &name.text, unit.invocation_args(id).len())),
                        Some(NodeKind::NameExpr { name: r }) if r == "this" => {
                            refs.extend(self.index.methods_named(unit, &name.text, unit.invocation_args(id).len()))
                        }
                        Some(NodeKind::NameExpr { name: r }) if find_declaration(unit, r, id).is_none() => {
                            refs.extend(self.index.class_named(r))
                        }
                        _ => {}
                    }
                }
                NodeKind::ObjectCreation { ty } => refs.extend(self.index.class_for_type(&ty.text)),
                _ => {}
            }
        }
        for r in refs {
            // References inside the definition itself (a class's own methods) need no copy.
            if r == def || unit.is_ancestor(def, r) {
                if r == def {
                    self.visit(r);
                }
                continue;
            }
            self.visit(r);
        }
        self.stack.pop();
    }
}
