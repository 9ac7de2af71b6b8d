//! Structural lookups over a parsed unit.

use std::collections::BTreeSet;

use crate::mapping::ApiSignature;

use super::lexer::{tokenize, TokenKind};
use super::tree::{NodeId, NodeKind, SourceUnit, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("node {0:?} does not belong to this unit")]
pub struct NotInUnit(pub NodeId);

/// Invocations matching the signature's method name and arity, in source order.
pub fn find_invocations(unit: &SourceUnit, signature: &ApiSignature) -> Vec<NodeId> {
    find_calls(unit, &signature.method, signature.arity())
}

pub fn find_calls(unit: &SourceUnit, method: &str, arity: usize) -> Vec<NodeId> {
    unit.ids()
        .filter(|id| match unit.kind(*id) {
            NodeKind::MethodInvocation { name, .. } => name.text == method && unit.invocation_args(*id).len() == arity,
            _ => false,
        })
        .collect()
}

/// Nearest enclosing method (none for field initializers and top-level
/// snippet statements) and nearest enclosing class (none for snippets).
pub fn enclosing_context(unit: &SourceUnit, node: NodeId) -> Result<(Option<NodeId>, Option<NodeId>), NotInUnit> {
    if !unit.contains(node) {
        return Err(NotInUnit(node));
    }
    let method = unit.ancestors(node).find(|a| matches!(unit.kind(*a), NodeKind::MethodDecl { .. }));
    let class = unit.ancestors(node).find(|a| matches!(unit.kind(*a), NodeKind::ClassDecl { .. }));
    Ok((method, class))
}

pub fn enclosing_method(unit: &SourceUnit, node: NodeId) -> Option<NodeId> {
    unit.ancestors(node).find(|a| matches!(unit.kind(*a), NodeKind::MethodDecl { .. }))
}

pub fn enclosing_class(unit: &SourceUnit, node: NodeId) -> Option<NodeId> {
    unit.ancestors(node).find(|a| matches!(unit.kind(*a), NodeKind::ClassDecl { .. }))
}

/// Innermost statement (other than a block) containing the node.
pub fn enclosing_statement(unit: &SourceUnit, node: NodeId) -> Option<NodeId> {
    unit.enclosing(node, |k| k.is_statement() && !matches!(k, NodeKind::Block))
}

/// `Outer.Inner` path of a class declaration.
pub fn class_path(unit: &SourceUnit, class: NodeId) -> String {
    let mut parts: Vec<&str> = std::iter::once(class)
        .chain(unit.ancestors(class))
        .filter_map(|a| match unit.kind(a) {
            NodeKind::ClassDecl { name, .. } => Some(name.text.as_str()),
            _ => None,
        })
        .collect();
    parts.reverse();
    parts.join(".")
}

pub fn find_class_by_path(unit: &SourceUnit, path: &str) -> Option<NodeId> {
    unit.ids().find(|id| matches!(unit.kind(*id), NodeKind::ClassDecl { .. }) && class_path(unit, *id) == path)
}

pub fn class_name(unit: &SourceUnit, class: NodeId) -> Option<&str> {
    match unit.kind(class) {
        NodeKind::ClassDecl { name, .. } => Some(&name.text),
        _ => None,
    }
}

pub fn method_name(unit: &SourceUnit, method: NodeId) -> Option<&str> {
    match unit.kind(method) {
        NodeKind::MethodDecl { name, .. } => Some(&name.text),
        _ => None,
    }
}

/// Whether the text contains the version-check token sequence
/// `VERSION . SDK_INT` (covers `Build.VERSION.SDK_INT`, the fully qualified
/// form and a statically imported `VERSION.SDK_INT`).
pub fn mentions_sdk_int(text: &str) -> bool {
    let Ok(tokens) = tokenize(text) else { return false };
    let t: Vec<&str> = tokens.iter().map(|t| t.span.slice(text)).collect();
    t.windows(3).any(|w| w == ["VERSION", ".", "SDK_INT"])
}

/// IfStmt whose condition is a version check.
pub fn is_guard_if(unit: &SourceUnit, id: NodeId) -> bool {
    matches!(unit.kind(id), NodeKind::IfStmt) && mentions_sdk_int(unit.text_of(unit.if_parts(id).0))
}

/// Nearest enclosing version-guard IfStmt.
pub fn enclosing_guard(unit: &SourceUnit, node: NodeId) -> Option<NodeId> {
    unit.ancestors(node).find(|a| is_guard_if(unit, *a))
}

/// Statements of a block-like container (Block or CompilationUnit).
pub fn statements_of(unit: &SourceUnit, container: NodeId) -> Vec<NodeId> {
    unit.children(container).iter().copied().filter(|c| unit.kind(*c).is_statement()).collect()
}

/// Statement immediately before `stmt` in its containing block, if any.
pub fn previous_statement(unit: &SourceUnit, stmt: NodeId) -> Option<NodeId> {
    let parent = unit.parent(stmt)?;
    if !matches!(unit.kind(parent), NodeKind::Block | NodeKind::CompilationUnit) {
        return None;
    }
    let siblings = statements_of(unit, parent);
    let i = siblings.iter().position(|s| *s == stmt)?;
    i.checked_sub(1).map(|j| siblings[j])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclSite {
    Local { decl: NodeId, declarator: NodeId },
    Param(NodeId),
    Field { decl: NodeId, declarator: NodeId },
}

/// Where a name visible at `site` is declared, following Java scoping:
/// locals declared earlier in an enclosing block, then parameters, then
/// fields of enclosing classes walking outward.
pub fn find_declaration(unit: &SourceUnit, name: &str, site: NodeId) -> Option<DeclSite> {
    let site_start = unit.span(site).start;
    let method = enclosing_method(unit, site);
    let scope_root = method.unwrap_or(unit.root());
    let mut best: Option<(usize, DeclSite)> = None;
    for id in unit.descendants(scope_root) {
        if let NodeKind::Declarator { name: n } = unit.kind(id) {
            if n.text != name || n.span.start >= site_start {
                continue;
            }
            let decl = unit.parent(id).unwrap();
            if !matches!(unit.kind(decl), NodeKind::LocalVarDecl { .. }) {
                continue;
            }
            // visible only if the declaring block encloses the site
            let Some(block) = unit.parent(decl) else { continue };
            if !unit.span(block).contains(unit.span(site)) {
                continue;
            }
            if best.as_ref().is_none_or(|(s, _)| n.span.start > *s) {
                best = Some((n.span.start, DeclSite::Local { decl, declarator: id }));
            }
        }
    }
    if let Some((_, d)) = best {
        return Some(d);
    }
    if let Some(m) = method {
        for p in unit.method_params(m) {
            if matches!(unit.kind(p), NodeKind::Param { name: n, .. } if n.text == name) {
                return Some(DeclSite::Param(p));
            }
        }
    }
    for class in unit.ancestors(site).filter(|a| matches!(unit.kind(*a), NodeKind::ClassDecl { .. })) {
        if let Some(d) = field_declarator(unit, class, name) {
            return Some(DeclSite::Field { decl: unit.parent(d).unwrap(), declarator: d });
        }
    }
    None
}

/// Field declarator named `name` directly in `class`.
pub fn field_declarator(unit: &SourceUnit, class: NodeId, name: &str) -> Option<NodeId> {
    for member in unit.children(class) {
        if matches!(unit.kind(*member), NodeKind::FieldDecl { .. }) {
            for d in unit.children(*member) {
                if matches!(unit.kind(*d), NodeKind::Declarator { name: n } if n.text == name) {
                    return Some(*d);
                }
            }
        }
    }
    None
}

/// Declared type of a name visible at `site`.
pub fn declared_type(unit: &SourceUnit, name: &str, site: NodeId) -> Option<String> {
    let ty = match find_declaration(unit, name, site)? {
        DeclSite::Local { decl, .. } | DeclSite::Field { decl, .. } => match unit.kind(decl) {
            NodeKind::LocalVarDecl { ty, .. } | NodeKind::FieldDecl { ty, .. } => ty.clone(),
            _ => return None,
        },
        DeclSite::Param(p) => match unit.kind(p) {
            NodeKind::Param { ty, .. } => ty.trim_end_matches("...").to_string(),
            _ => return None,
        },
    };
    Some(ty).filter(|t| t != "var")
}

/// Every identifier token in the text; used for collision-free naming.
pub fn identifiers(text: &str) -> BTreeSet<String> {
    tokenize(text)
        .map(|toks| toks.iter().filter(|t| t.kind == TokenKind::Ident).map(|t| t.span.slice(text).to_string()).collect())
        .unwrap_or_default()
}

/// Names of all declared classes and methods.
pub fn declared_type_and_method_names(unit: &SourceUnit) -> BTreeSet<String> {
    unit.ids()
        .filter_map(|id| match unit.kind(id) {
            NodeKind::ClassDecl { name, .. } | NodeKind::MethodDecl { name, .. } => Some(name.text.clone()),
            _ => None,
        })
        .collect()
}

/// Leading whitespace of the line containing `offset`.
pub fn line_indent(text: &str, offset: usize) -> &str {
    let line_start = text[..offset].rfind('\n').map_or(0, |i| i + 1);
    let rest = &text[line_start..];
    let n = rest.len() - rest.trim_start_matches([' ', '\t']).len();
    &rest[..n]
}

/// Span covering a statement's whole line(s) including the trailing newline,
/// when nothing else shares those lines; otherwise the statement span itself.
pub fn statement_line_span(text: &str, span: Span) -> Span {
    let line_start = text[..span.start].rfind('\n').map_or(0, |i| i + 1);
    let before_blank = text[line_start..span.start].trim().is_empty();
    let after_end = text[span.end..].find('\n').map_or(text.len(), |i| span.end + i);
    let after_blank = text[span.end..after_end].trim().is_empty();
    if before_blank && after_blank {
        let end = if after_end < text.len() { after_end + 1 } else { after_end };
        Span::new(line_start, end)
    } else {
        span
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn duplicate_invocations_in_one_statement_in_order() {
        let src = "class A { void m(TimePicker tp) { String s = tp.getCurrentHour() + \":\" + tp.getCurrentHour(); } }";
        let u = parse(src).unwrap();
        let sig = ApiSignature::new(None, "getCurrentHour", &[]);
        let calls = find_invocations(&u, &sig);
        assert_eq!(calls.len(), 2);
        assert!(u.span(calls[0]).start < u.span(calls[1]).start);
        assert_eq!(enclosing_statement(&u, calls[0]), enclosing_statement(&u, calls[1]));
    }

    #[test]
    fn arity_filters_overloads() {
        let src = "class A { void m() { v.vibrate(50); v.vibrate(p, -1); v.vibrate(d); } }";
        let u = parse(src).unwrap();
        let sig = ApiSignature::new(None, "vibrate", &["long"]);
        assert_eq!(find_invocations(&u, &sig).len(), 2);
        assert!(find_invocations(&u, &ApiSignature::new(None, "getDeviceId", &[])).is_empty());
    }

    #[test]
    fn context_of_field_initializer_and_nested_class() {
        let src = "class Outer { int f = g(); class Inner { void m() { h(); } } }";
        let u = parse(src).unwrap();
        let g = find_calls(&u, "g", 0)[0];
        let (m, c) = enclosing_context(&u, g).unwrap();
        assert!(m.is_none());
        assert_eq!(class_name(&u, c.unwrap()), Some("Outer"));
        let h = find_calls(&u, "h", 0)[0];
        let (m, c) = enclosing_context(&u, h).unwrap();
        assert_eq!(method_name(&u, m.unwrap()), Some("m"));
        assert_eq!(class_path(&u, c.unwrap()), "Outer.Inner");
        assert!(enclosing_context(&u, NodeId(9999)).is_err());
    }

    #[test]
    fn guard_detection_variants() {
        assert!(mentions_sdk_int("android.os.Build.VERSION.SDK_INT >= 23"));
        assert!(mentions_sdk_int("Build.VERSION.SDK_INT>=Build.VERSION_CODES.M"));
        assert!(mentions_sdk_int("VERSION.SDK_INT >= 21"));
        assert!(!mentions_sdk_int("SDK_INT >= 21"));
        assert!(!mentions_sdk_int("x > 3"));
    }

    #[test]
    fn declarations_follow_scoping() {
        let src = "class A { String s; void m(int s2) { int x = 1; if (c) { int y = x; } f(y, s, s2, x); } }";
        let u = parse(src).unwrap();
        let call = find_calls(&u, "f", 4)[0];
        assert!(find_declaration(&u, "y", call).is_none());
        assert!(matches!(find_declaration(&u, "s", call), Some(DeclSite::Field { .. })));
        assert!(matches!(find_declaration(&u, "s2", call), Some(DeclSite::Param(_))));
        assert_eq!(declared_type(&u, "x", call).as_deref(), Some("int"));
    }
}
