//! Temporary-variable normalization of invocation sites, and its inverse.
//!
//! Normalizing `Spanned span = Html.fromHtml(text);` yields
//!
//! ```text
//! String parameterVariable0 = text;
//! Spanned tempFunctionReturnValue;
//! tempFunctionReturnValue = Html.fromHtml(parameterVariable0);
//! Spanned span = tempFunctionReturnValue;
//! ```
//!
//! Denormalization inlines such temporaries again once the update template
//! has been spliced in, as long as doing so cannot duplicate or reorder a
//! side effect.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::mapping::ApiSignature;
use crate::syntax::query::{
    self, declared_type, enclosing_method, enclosing_statement, find_declaration, line_indent, previous_statement, statement_line_span,
};
use crate::syntax::{parse, EditSet, Expr, NodeId, NodeKind, ParseError, SourceUnit, Span};

pub const CLASS_NAME_VARIABLE: &str = "classNameVariable";
pub const PARAMETER_VARIABLE: &str = "parameterVariable";
pub const RETURN_VARIABLE: &str = "tempFunctionReturnValue";
pub const NEW_PARAMETER_VARIABLE: &str = "newParameterVariable";

/// Whether `name` follows the temporary naming scheme, including `_k`
/// collision suffixes.
pub fn is_scheme_name(name: &str) -> bool {
    let base = match name.rsplit_once('_') {
        Some((b, k)) if !k.is_empty() && k.bytes().all(|c| c.is_ascii_digit()) => b,
        _ => name,
    };
    let numbered = |prefix: &str| base.strip_prefix(prefix).is_some_and(|n| !n.is_empty() && n.bytes().all(|c| c.is_ascii_digit()));
    base == CLASS_NAME_VARIABLE || base == RETURN_VARIABLE || numbered(PARAMETER_VARIABLE) || numbered(NEW_PARAMETER_VARIABLE)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReceiverKind {
    Instance,
    Static,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntroducedTemp {
    pub name: String,
    pub ty: String,
    /// Source text the temporary stands for.
    pub original: String,
    /// Declaration span in the normalized unit.
    pub decl_span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationRecord {
    /// Byte offset of the invocation in the unit that was normalized.
    pub site_id: usize,
    pub introduced: Vec<IntroducedTemp>,
    pub receiver_kind: ReceiverKind,
    pub result_temp: Option<String>,
    /// The normalized call in the output unit.
    pub call_span: Span,
    /// Statement holding the normalized call (`tmp = call;` when the value is used).
    pub call_statement: Span,
    pub diagnostics: Vec<String>,
}

impl NormalizationRecord {
    pub fn temp_names(&self) -> impl Iterator<Item = &str> {
        self.introduced.iter().map(|t| t.name.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error("node is not a method invocation")]
    NotAnInvocation,
    #[error("invocation lies inside an unsupported construct")]
    InsideOpaque,
    #[error("invocation is not inside a statement (field initializer?)")]
    NotInStatement,
    #[error("normalized code does not parse: {0}")]
    Parse(#[from] ParseError),
}

/// Whether a receiver expression names a type rather than a value.
pub fn is_static_receiver(unit: &SourceUnit, receiver: NodeId, signature: Option<&ApiSignature>) -> bool {
    let e = Expr::from_node(unit, receiver);
    let Some(q) = e.qualified_name() else { return false };
    let root = e.root_name().unwrap_or_default();
    if root == "this" || root == "super" || find_declaration(unit, root, receiver).is_some() {
        return false;
    }
    let type_like = q.split('.').any(|s| s.starts_with(|c: char| c.is_uppercase()));
    type_like || signature.and_then(|s| s.simple_receiver_type()).is_some_and(|t| t == q)
}

struct Writer {
    out: String,
}

impl Writer {
    fn push(&mut self, s: &str) -> Span {
        let start = self.out.len();
        self.out.push_str(s);
        Span::new(start, self.out.len())
    }
}

/// Rewrite the invocation `call` into temporary-variable form.
pub fn normalize_invocation(
    unit: &SourceUnit,
    call: NodeId,
    signature: Option<&ApiSignature>,
) -> Result<(SourceUnit, NormalizationRecord), NormalizeError> {
    let NodeKind::MethodInvocation { name: method, .. } = unit.kind(call) else {
        return Err(NormalizeError::NotAnInvocation);
    };
    if unit.in_opaque(call) {
        return Err(NormalizeError::InsideOpaque);
    }
    let stmt = enclosing_statement(unit, call).ok_or(NormalizeError::NotInStatement)?;
    let stmt_parent = unit.parent(stmt).ok_or(NormalizeError::NotInStatement)?;
    let wrap = match unit.kind(stmt_parent) {
        NodeKind::Block | NodeKind::CompilationUnit => false,
        NodeKind::IfStmt => true,
        _ => return Err(NormalizeError::NotInStatement),
    };
    let mut diagnostics = Vec::new();
    let mut taken = query::identifiers(&unit.text);
    let mut fresh = |base: String| -> String {
        let name = if taken.contains(&base) { (1..).map(|k| format!("{base}_{k}")).find(|n| !taken.contains(n)).unwrap() } else { base };
        taken.insert(name.clone());
        name
    };
    let mut decls: Vec<(String, String, String)> = Vec::new(); // (name, type, original)

    let receiver = unit.invocation_receiver(call);
    let receiver_kind = match receiver {
        None => ReceiverKind::None,
        Some(r) if matches!(unit.kind(r), NodeKind::NameExpr { name } if name == "this" || name == "super") => ReceiverKind::None,
        Some(r) if is_static_receiver(unit, r, signature) => ReceiverKind::Static,
        Some(_) => ReceiverKind::Instance,
    };
    let receiver_text = match (receiver, receiver_kind) {
        (Some(r), ReceiverKind::Instance) => {
            let ty =
                name_type(unit, r).or_else(|| signature.and_then(|s| s.simple_receiver_type()).map(str::to_string)).unwrap_or_else(|| {
                    diagnostics.push(format!("type of receiver `{}` unknown; declared as Object", unit.text_of(r)));
                    "Object".into()
                });
            let name = fresh(CLASS_NAME_VARIABLE.to_string());
            decls.push((name.clone(), ty, unit.text_of(r).to_string()));
            Some(name)
        }
        (Some(r), _) => Some(unit.text_of(r).to_string()),
        (None, _) => None,
    };
    let mut arg_names = Vec::new();
    for (i, a) in unit.invocation_args(call).iter().enumerate() {
        let ty = name_type(unit, *a)
            .or_else(|| signature.and_then(|s| s.simple_param_type(i)).map(|t| t.trim_end_matches("...").to_string()))
            .unwrap_or_else(|| {
                diagnostics.push(format!("type of argument `{}` unknown; declared as Object", unit.text_of(*a)));
                "Object".into()
            });
        let name = fresh(format!("{PARAMETER_VARIABLE}{i}"));
        decls.push((name.clone(), ty, unit.text_of(*a).to_string()));
        arg_names.push(name);
    }
    let new_call = match &receiver_text {
        Some(r) => format!("{r}.{}({})", method.text, arg_names.join(", ")),
        None => format!("{}({})", method.text, arg_names.join(", ")),
    };

    let call_parent = unit.parent(call).unwrap();
    let used = !matches!(unit.kind(call_parent), NodeKind::ExprStmt);
    let result_temp = used.then(|| fresh(RETURN_VARIABLE.to_string()));
    let result_type = used.then(|| {
        result_type(unit, call).unwrap_or_else(|| {
            diagnostics.push(format!("type of `{}` result unknown; declared as Object", method.text));
            "Object".into()
        })
    });

    // Original statement with the call replaced.
    let stmt_span = unit.span(stmt);
    let call_span = unit.span(call);
    let replaced_by = result_temp.as_deref().unwrap_or(&new_call);
    let before = &unit.text[stmt_span.start..call_span.start];
    let after = &unit.text[call_span.end..stmt_span.end];

    let indent = if wrap {
        format!("{}    ", line_indent(&unit.text, unit.span(stmt_parent).start))
    } else {
        line_indent(&unit.text, stmt_span.start).to_string()
    };
    // `if (c)\n    stmt;` becomes `if (c) {` unless a comment sits before the statement.
    let mut edit_start = stmt_span.start;
    if wrap {
        let head = &unit.text[unit.span(stmt_parent).start..stmt_span.start];
        let last_token_end = crate::syntax::lexer::tokenize(head).ok().and_then(|t| t.last().map(|t| t.span.end));
        if last_token_end == Some(head.trim_end().len()) {
            edit_start = unit.span(stmt_parent).start + head.trim_end().len();
        }
    }
    let mut w = Writer { out: String::new() };
    if wrap {
        let open = if edit_start < stmt_span.start { " {" } else { "{" };
        w.push(&format!("{open}\n{indent}"));
    }
    let mut introduced = Vec::new();
    for (name, ty, original) in &decls {
        let span = w.push(&format!("{ty} {name} = {original};"));
        w.push(&format!("\n{indent}"));
        introduced.push(IntroducedTemp { name: name.clone(), ty: ty.clone(), original: original.clone(), decl_span: span });
    }
    let (rel_call, rel_call_stmt);
    if let (Some(tmp), Some(ty)) = (&result_temp, &result_type) {
        let span = w.push(&format!("{ty} {tmp};"));
        introduced.push(IntroducedTemp { name: tmp.clone(), ty: ty.clone(), original: unit.text_of(call).to_string(), decl_span: span });
        w.push(&format!("\n{indent}"));
        let s = w.push(&format!("{tmp} = "));
        rel_call = w.push(&new_call);
        w.push(";");
        rel_call_stmt = Span::new(s.start, rel_call.end + 1);
        w.push(&format!("\n{indent}"));
        w.push(before);
        w.push(replaced_by);
        w.push(after);
    } else {
        let s = w.push(before);
        rel_call = w.push(&new_call);
        let e = w.push(after);
        rel_call_stmt = Span::new(s.start, e.end);
    }
    if wrap {
        let outer = line_indent(&unit.text, unit.span(stmt_parent).start).to_string();
        w.push(&format!("\n{outer}}}"));
    }

    let mut edits = EditSet::new();
    edits.replace(Span::new(edit_start, stmt_span.end), w.out.clone()).expect("single edit");
    let text = edits.apply(&unit.text);
    let out = crate::syntax::parse_with_path(&text, unit.path.clone())?;
    let shift = |s: Span| Span::new(s.start + edit_start, s.end + edit_start);
    for t in &mut introduced {
        t.decl_span = shift(t.decl_span);
    }
    let record = NormalizationRecord {
        site_id: call_span.start,
        introduced,
        receiver_kind,
        result_temp,
        call_span: shift(rel_call),
        call_statement: shift(rel_call_stmt),
        diagnostics,
    };
    Ok((out, record))
}

/// Declared type of a plain name expression.
fn name_type(unit: &SourceUnit, expr: NodeId) -> Option<String> {
    match unit.kind(expr) {
        NodeKind::NameExpr { name } => declared_type(unit, name, expr),
        _ => None,
    }
}

/// Type the value of `call` flows into.
fn result_type(unit: &SourceUnit, call: NodeId) -> Option<String> {
    let parent = unit.parent(call)?;
    match unit.kind(parent) {
        NodeKind::Declarator { .. } => match unit.kind(unit.parent(parent)?) {
            NodeKind::LocalVarDecl { ty, .. } if ty != "var" => Some(ty.clone()),
            _ => None,
        },
        NodeKind::AssignExpr { op } if op == "=" && unit.children(parent)[1] == call => name_type(unit, unit.children(parent)[0]),
        NodeKind::ReturnStmt => match unit.kind(enclosing_method(unit, call)?) {
            NodeKind::MethodDecl { return_type: Some(t), .. } => Some(t.clone()),
            _ => None,
        },
        _ => None,
    }
}

/// Which declarations denormalization may inline.
#[derive(Debug, Clone, Copy)]
pub enum TempSelection<'a> {
    /// Exactly these names (from normalization records and template bindings).
    Names(&'a [String]),
    /// Any name following the temporary naming scheme.
    Scheme,
}

impl TempSelection<'_> {
    fn selects(&self, name: &str) -> bool {
        match self {
            TempSelection::Names(names) => names.iter().any(|n| n == name),
            TempSelection::Scheme => is_scheme_name(name),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Denormalized {
    pub unit: SourceUnit,
    pub inlined: Vec<String>,
    /// Temporaries left in place, with the reason.
    pub kept: Vec<(String, String)>,
}

impl Denormalized {
    pub fn diagnostics(&self) -> Vec<String> {
        self.kept.iter().map(|(n, why)| format!("temporary `{n}` kept: {why}")).collect()
    }
}

/// Inline and delete eligible temporaries until nothing changes.
pub fn denormalize_unit(unit: &SourceUnit, selection: TempSelection<'_>) -> Result<Denormalized, ParseError> {
    let mut current = unit.clone();
    let mut inlined = Vec::new();
    for _ in 0..256 {
        let mut edits = EditSet::new();
        let mut progressed = false;
        for decl in temp_declarations(&current, selection) {
            let Ok(plan) = plan_inline(&current, decl) else { continue };
            if plan.edits.iter().any(|(s, _)| edits.would_conflict(*s)) {
                continue;
            }
            for (s, r) in plan.edits {
                edits.replace(s, r).expect("checked for conflicts");
            }
            inlined.push(plan.name);
            progressed = true;
        }
        if !progressed {
            break;
        }
        let text = edits.apply(&current.text);
        current = crate::syntax::parse_with_path(&text, current.path.clone())?;
    }
    let kept = temp_declarations(&current, selection)
        .into_iter()
        .map(|d| {
            let name = declared_name(&current, d);
            let why = plan_inline(&current, d).err().unwrap_or_else(|| "conflicting rewrite".into());
            (name, why)
        })
        .collect();
    Ok(Denormalized { unit: current, inlined, kept })
}

fn declared_name(unit: &SourceUnit, decl: NodeId) -> String {
    match unit.kind(unit.children(decl)[0]) {
        NodeKind::Declarator { name } => name.text.clone(),
        _ => unreachable!(),
    }
}

/// Single-declarator local declarations of selected names.
fn temp_declarations(unit: &SourceUnit, selection: TempSelection<'_>) -> Vec<NodeId> {
    unit.ids()
        .filter(|id| {
            matches!(unit.kind(*id), NodeKind::LocalVarDecl { .. })
                && unit.children(*id).len() == 1
                && selection.selects(&declared_name(unit, *id))
                && unit.parent(*id).is_some_and(|p| matches!(unit.kind(p), NodeKind::Block | NodeKind::CompilationUnit))
        })
        .collect()
}

struct Plan {
    name: String,
    edits: Vec<(Span, String)>,
}

fn is_lhs(unit: &SourceUnit, name_node: NodeId) -> bool {
    unit.parent(name_node).is_some_and(|p| matches!(unit.kind(p), NodeKind::AssignExpr { .. }) && unit.children(p)[0] == name_node)
}

fn mentions(text: &str, name: &str) -> bool {
    crate::syntax::lexer::tokenize(text).map(|toks| toks.iter().any(|t| t.span.slice(text) == name)).unwrap_or(true)
}

/// Text to substitute for a use, parenthesized where operator context demands.
fn substitution(unit: &SourceUnit, use_node: NodeId, value: &Expr, value_text: &str) -> String {
    let parent = unit.parent(use_node);
    let operator_context = parent.is_some_and(|p| match unit.kind(p) {
        NodeKind::BinaryExpr { .. } | NodeKind::FieldAccess { .. } => true,
        NodeKind::MethodInvocation { has_receiver: true, .. } => unit.children(p)[0] == use_node,
        _ => false,
    });
    let compound = matches!(value, Expr::Binary { .. } | Expr::Opaque(_));
    if operator_context && compound {
        format!("({value_text})")
    } else {
        value_text.to_string()
    }
}

/// Direct child of `block` containing `node`.
fn statement_in(unit: &SourceUnit, block: NodeId, node: NodeId) -> Option<NodeId> {
    std::iter::once(node).chain(unit.ancestors(node)).find(|a| unit.parent(*a) == Some(block))
}

/// Whether `node` sits in a branch of an if statement nested in `stmt`
/// (so it is evaluated conditionally relative to `stmt`).
fn conditionally_evaluated(unit: &SourceUnit, stmt: NodeId, node: NodeId) -> bool {
    let mut child = node;
    for a in unit.ancestors(node) {
        if matches!(unit.kind(a), NodeKind::IfStmt) && unit.children(a)[0] != child {
            return true;
        }
        if a == stmt {
            return false;
        }
        child = a;
    }
    false
}

fn plan_inline(unit: &SourceUnit, decl: NodeId) -> Result<Plan, String> {
    let declarator = unit.children(decl)[0];
    let name = declared_name(unit, decl);
    let block = unit.parent(decl).unwrap();
    let decl_span = unit.span(decl);
    let scope: Vec<NodeId> = unit.descendants(block).into_iter().filter(|id| unit.span(*id).start >= decl_span.end).collect();
    if scope.iter().any(|id| unit.kind(*id).is_opaque() && mentions(unit.text_of(*id), &name)) {
        return Err("used inside an unsupported construct".into());
    }
    let names: Vec<NodeId> =
        scope.iter().copied().filter(|id| matches!(unit.kind(*id), NodeKind::NameExpr { name: n } if *n == name)).collect();
    let reads: Vec<NodeId> = names.iter().copied().filter(|n| !is_lhs(unit, *n)).collect();
    let writes: Vec<NodeId> = names.iter().copied().filter(|n| is_lhs(unit, *n)).map(|n| unit.parent(n).unwrap()).collect();
    let delete_decl = (statement_line_span(&unit.text, decl_span), String::new());

    if let Some(init) = unit.declarator_init(declarator) {
        if !writes.is_empty() {
            return Err("assigned more than once".into());
        }
        let value = Expr::from_node(unit, init);
        let value_text = unit.text_of(init);
        let last_use = reads.iter().map(|r| unit.span(*r).end).max().unwrap_or(decl_span.end);
        let pure = value.is_pure() && !operands_reassigned(unit, &value, decl_span.end, last_use);
        if reads.is_empty() {
            return if pure {
                Ok(Plan { name, edits: vec![delete_decl] })
            } else {
                Err("unused, but its initializer has side effects".into())
            };
        }
        if !pure {
            if reads.len() > 1 {
                return Err(format!("initializer has side effects and is read {} times", reads.len()));
            }
            let read = reads[0];
            let stmt = statement_in(unit, block, read).ok_or("read outside its block")?;
            if conditionally_evaluated(unit, stmt, read) {
                return Err("initializer has side effects and its read is conditional".into());
            }
            let between_pure = query::statements_of(unit, block).into_iter().all(|s| {
                let span = unit.span(s);
                span.start <= decl_span.start
                    || span.start >= unit.span(stmt).start
                    || (matches!(unit.kind(s), NodeKind::LocalVarDecl { .. })
                        && unit.children(s).iter().all(|d| unit.declarator_init(*d).is_none_or(|i| Expr::from_node(unit, i).is_pure())))
            });
            if !between_pure {
                return Err("initializer has side effects and statements run in between".into());
            }
        }
        let mut edits = vec![delete_decl];
        for r in &reads {
            edits.push((unit.span(*r), substitution(unit, *r, &value, value_text)));
        }
        return Ok(Plan { name, edits });
    }

    // Declared without initializer: fold the assignments into the single read.
    if reads.len() != 1 {
        return Err(format!("read {} times", reads.len()));
    }
    let read = reads[0];
    let u = statement_in(unit, block, read).ok_or("read outside its block")?;
    if conditionally_evaluated(unit, u, read) {
        return Err("read is conditional".into());
    }
    let prev = previous_statement(unit, u).ok_or("no assignment right before the read")?;
    let assignment_value = |stmt: NodeId| -> Option<NodeId> {
        if !matches!(unit.kind(stmt), NodeKind::ExprStmt) {
            return None;
        }
        let e = unit.children(stmt)[0];
        match unit.kind(e) {
            NodeKind::AssignExpr { op } if op == "=" && writes.contains(&e) => Some(unit.children(e)[1]),
            _ => None,
        }
    };
    if let Some(value) = assignment_value(prev) {
        if writes.len() != 1 {
            return Err("assigned more than once".into());
        }
        let expr = Expr::from_node(unit, value);
        return Ok(Plan {
            name,
            edits: vec![
                delete_decl,
                (statement_line_span(&unit.text, unit.span(prev)), String::new()),
                (unit.span(read), substitution(unit, read, &expr, unit.text_of(value))),
            ],
        });
    }
    if !matches!(unit.kind(prev), NodeKind::IfStmt) || writes.len() != 2 {
        return Err("assignments are not adjacent to the read".into());
    }
    let (_, then, els) = unit.if_parts(prev);
    let els = els.ok_or("no else branch")?;
    let mut branch_assignments = Vec::new();
    for branch in [then, els] {
        if !matches!(unit.kind(branch), NodeKind::Block) {
            return Err("branch is not a block".into());
        }
        let last = *unit.children(branch).last().ok_or("empty branch")?;
        let value = assignment_value(last).ok_or("branch does not end with the assignment")?;
        branch_assignments.push((last, value));
    }
    let u_span = unit.span(u);
    let read_span = unit.span(read);
    let mut edits = vec![(statement_line_span(&unit.text, u_span), String::new())];
    let rewritten = |value: NodeId| -> Result<String, String> {
        let expr = Expr::from_node(unit, value);
        let sub = substitution(unit, read, &expr, unit.text_of(value));
        let text = format!("{}{}{}", &unit.text[u_span.start..read_span.start], sub, &unit.text[read_span.end..u_span.end]);
        match unit.kind(u) {
            NodeKind::ExprStmt | NodeKind::ReturnStmt => Ok(text),
            NodeKind::LocalVarDecl { .. } if unit.children(u).len() == 1 => {
                let d = unit.children(u)[0];
                let NodeKind::Declarator { name: w } = unit.kind(d) else { unreachable!() };
                let init = unit.declarator_init(d).ok_or("declaration without initializer")?;
                let init_span = unit.span(init);
                let init_text =
                    format!("{}{}{}", &unit.text[init_span.start..read_span.start], sub, &unit.text[read_span.end..init_span.end]);
                Ok(format!("{} = {};", w.text, init_text))
            }
            _ => Err("read is not in a simple statement".into()),
        }
    };
    for (last, value) in &branch_assignments {
        edits.push((unit.span(*last), rewritten(*value)?));
    }
    if let NodeKind::LocalVarDecl { ty, modifiers } = unit.kind(u) {
        let d = unit.children(u)[0];
        let NodeKind::Declarator { name: w } = unit.kind(d) else { unreachable!() };
        let mods = modifiers.span.map(|s| format!("{} ", s.slice(&unit.text))).unwrap_or_default();
        edits[0] = (statement_line_span(&unit.text, u_span), String::new());
        edits.push((decl_span, format!("{mods}{ty} {};", w.text)));
    } else {
        edits.push(delete_decl);
    }
    Ok(Plan { name, edits })
}

/// Whether any name read by `value` is written between `from` and `to`.
fn operands_reassigned(unit: &SourceUnit, value: &Expr, from: usize, to: usize) -> bool {
    let names: BTreeSet<&str> = value.names().into_iter().collect();
    unit.ids().any(|id| {
        let span = unit.span(id);
        if span.start < from || span.start > to {
            return false;
        }
        match unit.kind(id) {
            NodeKind::AssignExpr { .. } => {
                let lhs = Expr::from_node(unit, unit.children(id)[0]);
                lhs.root_name().is_some_and(|r| names.contains(r))
            }
            k if k.is_opaque() => names.iter().any(|n| mentions(unit.text_of(id), n)),
            _ => false,
        }
    })
}

/// Normalize then immediately denormalize one site; used by round-trip checks.
pub fn round_trip(unit: &SourceUnit, call: NodeId, signature: Option<&ApiSignature>) -> Result<SourceUnit, String> {
    let (normalized, record) = normalize_invocation(unit, call, signature).map_err(|e| e.to_string())?;
    let names: Vec<String> = record.temp_names().map(str::to_string).collect();
    let d = denormalize_unit(&normalized, TempSelection::Names(&names)).map_err(|e| e.to_string())?;
    Ok(d.unit)
}

/// Reparse helper for callers holding plain text.
pub fn denormalize_text(text: &str, selection: TempSelection<'_>) -> Result<Denormalized, ParseError> {
    denormalize_unit(&parse(text)?, selection)
}
