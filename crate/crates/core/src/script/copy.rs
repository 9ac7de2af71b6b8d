use std::collections::{BTreeMap, BTreeSet};

use crate::flow::DefinitionKind;
use crate::syntax::lexer::{tokenize, TokenKind};
use crate::syntax::query::{declared_type_and_method_names, line_indent};
use crate::syntax::{parse_members, EditSet, NodeId, NodeKind, ParseError, SourceUnit, Span};

use super::model::CarriedDefinition;

/// How carried definitions will land in a particular target.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RenamePlan {
    /// Old simple name to new simple name.
    pub renames: BTreeMap<String, String>,
    /// Qualified names of definitions the target already has verbatim.
    pub present: BTreeSet<String>,
}

impl RenamePlan {
    pub fn final_name(&self, def: &CarriedDefinition) -> String {
        let n = def.simple_name();
        self.renames.get(n).cloned().unwrap_or_else(|| n.to_string())
    }
}

fn token_texts(text: &str) -> Vec<&str> {
    tokenize(text).map(|t| t.iter().map(|t| t.span.slice(text)).collect()).unwrap_or_default()
}

/// Collisions with any class or method the target declares are resolved by
/// appending the smallest positive integer that makes the name free.
pub fn plan_renames(target: &SourceUnit, defs: &[CarriedDefinition]) -> RenamePlan {
    let existing = declared_type_and_method_names(target);
    let mut taken: BTreeSet<String> = existing.clone();
    taken.extend(defs.iter().map(|d| d.simple_name().to_string()));
    let mut plan = RenamePlan::default();
    for d in defs {
        let name = d.simple_name();
        if !existing.contains(name) {
            continue;
        }
        if already_present(target, d) {
            plan.present.insert(d.qualified_name.clone());
            continue;
        }
        if plan.renames.contains_key(name) {
            continue;
        }
        let fresh = (1..).map(|k| format!("{name}{k}")).find(|n| !taken.contains(n)).unwrap();
        taken.insert(fresh.clone());
        plan.renames.insert(name.to_string(), fresh);
    }
    plan
}

/// The target declares a token-identical copy (modulo access modifiers).
fn already_present(target: &SourceUnit, def: &CarriedDefinition) -> bool {
    let strip = |toks: Vec<&str>| -> Vec<String> {
        toks.into_iter().filter(|t| !matches!(*t, "public" | "private" | "protected")).map(str::to_string).collect()
    };
    let wanted = strip(token_texts(&def.text));
    target.ids().any(|id| match target.kind(id) {
        NodeKind::ClassDecl { name, .. } | NodeKind::MethodDecl { name, .. } if name.text == def.simple_name() => {
            strip(token_texts(target.text_of(id))) == wanted
        }
        _ => false,
    })
}

/// Replace identifier tokens by name.
pub fn rename_identifiers(text: &str, renames: &BTreeMap<String, String>) -> String {
    if renames.is_empty() {
        return text.to_string();
    }
    let Ok(tokens) = tokenize(text) else { return text.to_string() };
    let mut edits = EditSet::new();
    for t in tokens.iter().filter(|t| t.kind == TokenKind::Ident) {
        if let Some(new) = renames.get(t.span.slice(text)) {
            edits.replace(t.span, new.clone()).expect("tokens are disjoint");
        }
    }
    edits.apply(text)
}

fn publicize(unit: &SourceUnit, decl: NodeId, edits: &mut EditSet) {
    let (modifiers, name_span) = match unit.kind(decl) {
        NodeKind::ClassDecl { modifiers, name, .. } | NodeKind::MethodDecl { modifiers, name, .. } => (modifiers, name.span),
        _ => return,
    };
    if modifiers.has("public") {
        return;
    }
    if let Some(k) = modifiers.keywords.iter().find(|k| k.text == "private" || k.text == "protected") {
        let _ = edits.replace(k.span, "public");
        return;
    }
    let start = match modifiers.keywords.first() {
        Some(k) => k.span.start,
        None => {
            let from = modifiers.span.map_or(unit.span(decl).start, |s| s.end);
            let skip = unit.text[from..name_span.start].len() - unit.text[from..name_span.start].trim_start().len();
            from + skip
        }
    };
    let _ = edits.insert(start, "public ");
}

/// Definition text with the declaration (and, for classes, its direct
/// methods and constructors) made public.
pub fn make_public(def: &CarriedDefinition) -> String {
    let Ok(unit) = parse_members(&def.text) else { return def.text.clone() };
    let Some(&decl) = unit.children(unit.root()).first() else { return def.text.clone() };
    let mut edits = EditSet::new();
    publicize(&unit, decl, &mut edits);
    if def.kind == DefinitionKind::Class {
        for m in unit.children(decl) {
            if matches!(unit.kind(*m), NodeKind::MethodDecl { .. }) {
                publicize(&unit, *m, &mut edits);
            }
        }
    }
    edits.apply(&def.text)
}

fn indent_block(text: &str, indent: &str) -> String {
    text.lines().map(|l| if l.trim().is_empty() { String::new() } else { format!("{indent}{l}") }).collect::<Vec<_>>().join("\n")
}

/// Insert each definition as the last member of its host class, after a
/// blank line. `placements` pairs host ClassDecl nodes with definitions.
pub fn insert_definitions(
    target: &SourceUnit,
    placements: &[(NodeId, Vec<CarriedDefinition>)],
    plan: &RenamePlan,
) -> Result<SourceUnit, ParseError> {
    let mut edits = EditSet::new();
    for (host, defs) in placements {
        let defs: Vec<&CarriedDefinition> = defs.iter().filter(|d| !plan.present.contains(&d.qualified_name)).collect();
        if defs.is_empty() {
            continue;
        }
        let brace = unit_closing_brace(target, *host);
        let line_start = target.text[..brace].rfind('\n').map_or(0, |i| i + 1);
        let brace_indent = line_indent(&target.text, brace);
        let member_indent = format!("{brace_indent}    ");
        let body = defs
            .iter()
            .map(|d| indent_block(&rename_identifiers(&make_public(d), &plan.renames), &member_indent))
            .collect::<Vec<_>>()
            .join("\n\n");
        if target.text[line_start..brace].trim().is_empty() {
            edits.insert(line_start, format!("\n{body}\n")).expect("one insertion per host");
        } else {
            edits.insert(brace, format!("\n\n{body}\n{brace_indent}")).expect("one insertion per host");
        }
    }
    if edits.is_empty() {
        return Ok(target.clone());
    }
    crate::syntax::parse_with_path(&edits.apply(&target.text), target.path.clone())
}

fn unit_closing_brace(unit: &SourceUnit, class: NodeId) -> usize {
    let span: Span = unit.span(class);
    span.end - 1
}

#[derive(Debug, Clone)]
pub struct Copied {
    pub unit: SourceUnit,
    pub plan: RenamePlan,
}

/// Copy definitions into the first top-level class of `target`: methods and
/// classes become its last members. Colliding names are renamed.
pub fn copy_definitions(target: &SourceUnit, defs: &[CarriedDefinition]) -> Result<Copied, ParseError> {
    let plan = plan_renames(target, defs);
    let host = target.children(target.root()).iter().copied().find(|c| matches!(target.kind(*c), NodeKind::ClassDecl { .. }));
    let Some(host) = host else { return Ok(Copied { unit: target.clone(), plan }) };
    if defs.is_empty() {
        return Ok(Copied { unit: target.clone(), plan });
    }
    let unit = insert_definitions(target, &[(host, defs.to_vec())], &plan)?;
    Ok(Copied { unit, plan })
}
