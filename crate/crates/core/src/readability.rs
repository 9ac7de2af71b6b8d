//! Backward slices around API usages and a structural readability score.
//!
//! The score is a closed-form proxy, `1 / (1 + 0.05·L + 0.08·V + 0.02·T)`,
//! over logical lines `L` (statements plus `else` headers), distinct local
//! identifiers `V` and mean tokens per logical line `T`. Only ordering
//! between scores is meaningful.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::mapping::{ApiMapping, ApiSignature};
use crate::syntax::lexer::tokenize;
use crate::syntax::query::{enclosing_guard, enclosing_method, enclosing_statement, find_invocations, method_name};
use crate::syntax::{parse, Expr, NodeId, NodeKind, ParseError, SourceUnit};

pub const WRAPPER_HEAD: &str = "class MainActivity {\n    public static void main() {\n";
pub const WRAPPER_TAIL: &str = "    }\n}\n";
const BODY_INDENT: &str = "        ";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slice {
    /// Method the slice was taken from; `None` for top-level snippets.
    pub method: Option<String>,
    pub statements: Vec<String>,
    pub wrapped_text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("no deprecated or replacement API usage found")]
pub struct NoApiUsage;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Features {
    pub lines: usize,
    pub identifiers: usize,
    pub tokens_per_line: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityScore {
    pub value: f64,
    pub features: Features,
}

pub fn score_from_features(features: Features) -> f64 {
    1.0 / (1.0 + 0.05 * features.lines as f64 + 0.08 * features.identifiers as f64 + 0.02 * features.tokens_per_line)
}

/// Variables a statement reads and writes.
fn reads_and_writes(unit: &SourceUnit, stmt: NodeId) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut reads = BTreeSet::new();
    let mut writes = BTreeSet::new();
    for id in std::iter::once(stmt).chain(unit.descendants(stmt)) {
        match unit.kind(id) {
            NodeKind::NameExpr { name } => {
                let is_lhs = unit
                    .parent(id)
                    .is_some_and(|p| matches!(unit.kind(p), NodeKind::AssignExpr { op } if op == "=") && unit.children(p)[0] == id);
                if is_lhs {
                    writes.insert(name.clone());
                } else {
                    reads.insert(name.clone());
                }
            }
            NodeKind::Declarator { name } => {
                writes.insert(name.text.clone());
            }
            k if k.is_opaque() => {
                if let Ok(toks) = tokenize(unit.text_of(id)) {
                    for t in toks {
                        reads.insert(t.span.slice(unit.text_of(id)).to_string());
                    }
                }
            }
            _ => {}
        }
    }
    (reads, writes)
}

/// Innermost statement (other than a block) holding `node`.
fn statement_of(unit: &SourceUnit, node: NodeId) -> Option<NodeId> {
    if unit.kind(node).is_statement() && !matches!(unit.kind(node), NodeKind::Block) {
        return Some(node);
    }
    enclosing_statement(unit, node)
}

/// One backward slice per method holding a deprecated or replacement call.
pub fn slice_api_usage(unit: &SourceUnit, mapping: &ApiMapping) -> Result<Vec<Slice>, NoApiUsage> {
    slice_calls(unit, &[&mapping.deprecated, &mapping.replacement])
}

pub fn slice_calls(unit: &SourceUnit, signatures: &[&ApiSignature]) -> Result<Vec<Slice>, NoApiUsage> {
    let mut calls: Vec<NodeId> = signatures.iter().flat_map(|s| find_invocations(unit, s)).collect();
    calls.sort();
    calls.dedup();
    if calls.is_empty() {
        return Err(NoApiUsage);
    }
    let mut by_scope: Vec<(Option<NodeId>, Vec<NodeId>)> = Vec::new();
    for c in calls {
        let m = enclosing_method(unit, c);
        match by_scope.iter_mut().find(|(s, _)| *s == m) {
            Some((_, v)) => v.push(c),
            None => by_scope.push((m, vec![c])),
        }
    }
    Ok(by_scope.into_iter().filter_map(|(m, calls)| slice_scope(unit, m, &calls)).collect())
}

fn slice_scope(unit: &SourceUnit, method: Option<NodeId>, calls: &[NodeId]) -> Option<Slice> {
    let scope = method.unwrap_or(unit.root());
    let in_scope = |n: NodeId| enclosing_method(unit, n) == method;
    let mut selected: BTreeSet<NodeId> = BTreeSet::new();
    let mut work = Vec::new();
    for &c in calls {
        let seed = enclosing_guard(unit, c).filter(|g| in_scope(*g)).or_else(|| statement_of(unit, c))?;
        if selected.insert(seed) {
            work.push(seed);
        }
    }
    let candidates: Vec<NodeId> = unit
        .descendants(scope)
        .into_iter()
        .filter(|id| matches!(unit.kind(*id), NodeKind::LocalVarDecl { .. } | NodeKind::ExprStmt) && in_scope(*id))
        .collect();
    while let Some(stmt) = work.pop() {
        let (reads, _) = reads_and_writes(unit, stmt);
        let before = unit.span(stmt).start;
        for &cand in &candidates {
            if selected.contains(&cand) || unit.span(cand).start >= before {
                continue;
            }
            let (_, writes) = reads_and_writes(unit, cand);
            if writes.iter().any(|w| reads.contains(w)) {
                selected.insert(cand);
                work.push(cand);
            }
        }
    }
    let mut stmts: Vec<NodeId> =
        selected.iter().copied().filter(|s| !selected.iter().any(|o| o != s && unit.is_ancestor(*o, *s))).collect();
    stmts.sort_by_key(|s| unit.span(*s).start);
    let statements: Vec<String> = stmts.iter().map(|s| reindent(unit, *s)).collect();
    let mut wrapped_text = WRAPPER_HEAD.to_string();
    for s in &statements {
        for line in s.lines() {
            if !line.trim().is_empty() {
                wrapped_text.push_str(BODY_INDENT);
                wrapped_text.push_str(line);
            }
            wrapped_text.push('\n');
        }
    }
    wrapped_text.push_str(WRAPPER_TAIL);
    Some(Slice { method: method.and_then(|m| method_name(unit, m)).map(str::to_string), statements, wrapped_text })
}

/// Statement text with continuation lines made relative to its first line.
fn reindent(unit: &SourceUnit, stmt: NodeId) -> String {
    let span = unit.span(stmt);
    let indent = crate::syntax::query::line_indent(&unit.text, span.start);
    let mut lines = unit.text_of(stmt).lines();
    let mut out = lines.next().unwrap_or_default().to_string();
    for l in lines {
        out.push('\n');
        out.push_str(l.strip_prefix(indent).unwrap_or(l.trim_start()));
    }
    out
}

/// Structural readability of the statements inside method bodies (or of a
/// top-level snippet). A slice's class/method wrapper is not counted.
pub fn score_readability(text: &str) -> Result<ReadabilityScore, ParseError> {
    let unit = parse(text)?;
    Ok(score_unit(&unit))
}

pub fn score_unit(unit: &SourceUnit) -> ReadabilityScore {
    let bodies: Vec<NodeId> =
        unit.ids().filter(|id| matches!(unit.kind(*id), NodeKind::MethodDecl { .. })).filter_map(|m| unit.method_body(m)).collect();
    let top_level: Vec<NodeId> = unit.children(unit.root()).iter().copied().filter(|c| unit.kind(*c).is_statement()).collect();
    let mut region: Vec<NodeId> = Vec::new();
    for b in &bodies {
        region.extend(unit.descendants(*b));
    }
    for t in &top_level {
        region.push(*t);
        region.extend(unit.descendants(*t));
    }
    let mut lines = 0;
    let mut idents = BTreeSet::new();
    for &id in &region {
        let kind = unit.kind(id);
        if kind.is_statement() && !matches!(kind, NodeKind::Block) {
            lines += 1;
        }
        if matches!(kind, NodeKind::IfStmt) && unit.if_parts(id).2.is_some_and(|e| matches!(unit.kind(e), NodeKind::Block)) {
            lines += 1;
        }
        match kind {
            NodeKind::Declarator { name } => {
                idents.insert(name.text.clone());
            }
            NodeKind::NameExpr { name } if is_local_identifier(unit, id, name) => {
                idents.insert(name.clone());
            }
            _ => {}
        }
    }
    let mut tokens = 0;
    for b in &bodies {
        let s = unit.span(*b);
        tokens += tokenize(&unit.text[s.start..s.end]).map_or(0, |t| t.len().saturating_sub(2));
    }
    for t in &top_level {
        tokens += tokenize(unit.text_of(*t)).map_or(0, |t| t.len());
    }
    let tokens_per_line = if lines == 0 { 0.0 } else { tokens as f64 / lines as f64 };
    let features = Features { lines, identifiers: idents.len(), tokens_per_line };
    ReadabilityScore { value: score_from_features(features), features }
}

fn is_local_identifier(unit: &SourceUnit, id: NodeId, name: &str) -> bool {
    if name == "this" || name == "super" || name.starts_with(|c: char| c.is_uppercase()) {
        return false;
    }
    // `android.os.Build...`: a package root, not a variable
    let mut top = id;
    while let Some(p) = unit.parent(top) {
        if !matches!(unit.kind(p), NodeKind::FieldAccess { .. }) {
            break;
        }
        top = p;
    }
    if top != id {
        let chain = Expr::from_node(unit, top);
        if chain.qualified_name().is_some_and(|q| q.split('.').any(|s| s.starts_with(|c: char| c.is_uppercase()))) {
            return false;
        }
    }
    true
}

/// Mean score over the per-method slices of a unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceScores {
    pub mean: f64,
    pub per_slice: Vec<(Option<String>, ReadabilityScore)>,
}

pub fn score_api_usage(unit: &SourceUnit, mapping: &ApiMapping) -> Result<SliceScores, NoApiUsage> {
    let slices = slice_api_usage(unit, mapping)?;
    let per_slice: Vec<(Option<String>, ReadabilityScore)> = slices
        .into_iter()
        .map(|s| {
            let score = score_readability(&s.wrapped_text).expect("slices re-parse");
            (s.method, score)
        })
        .collect();
    if per_slice.is_empty() {
        return Err(NoApiUsage);
    }
    let mean = per_slice.iter().map(|(_, s)| s.value).sum::<f64>() / per_slice.len() as f64;
    Ok(SliceScores { mean, per_slice })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hour_mapping() -> ApiMapping {
        ApiMapping::parse("deprecated: android.widget.TimePicker#setCurrentHour(java.lang.Integer)\nreplacement: android.widget.TimePicker#setHour(int)\nguard-symbol: android.os.Build.VERSION_CODES.M\n").unwrap()
    }

    #[test]
    fn guarded_update_slice() {
        let src = "public class Clock {\n    public void setTimeH(TimePicker tp, int hour) {\n        int parameterVariable0 = hour;\n        TimePicker classNameVariable = tp;\n        log(\"x\");\n        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {\n            classNameVariable.setHour(parameterVariable0);\n        } else {\n            classNameVariable.setCurrentHour(parameterVariable0);\n        }\n    }\n}\n";
        let slices = slice_api_usage(&parse(src).unwrap(), &hour_mapping()).unwrap();
        assert_eq!(slices.len(), 1);
        assert_eq!(
            slices[0].wrapped_text,
            "class MainActivity {\n    public static void main() {\n        int parameterVariable0 = hour;\n        TimePicker classNameVariable = tp;\n        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {\n            classNameVariable.setHour(parameterVariable0);\n        } else {\n            classNameVariable.setCurrentHour(parameterVariable0);\n        }\n    }\n}\n"
        );
        assert!(parse(&slices[0].wrapped_text).is_ok());
    }

    #[test]
    fn bare_invocation_slice_has_one_statement() {
        let m = ApiMapping::parse(
            "deprecated: TimePicker#getCurrentHour()\nreplacement: TimePicker#getHour()\nguard-symbol: android.os.Build.VERSION_CODES.M\n",
        )
        .unwrap();
        let slices = slice_api_usage(&parse("class A { void m() { tp.getCurrentHour(); } }").unwrap(), &m).unwrap();
        assert_eq!(slices[0].statements, vec!["tp.getCurrentHour();"]);
    }

    #[test]
    fn no_usage_is_an_error() {
        assert_eq!(slice_api_usage(&parse("class A {}").unwrap(), &hour_mapping()), Err(NoApiUsage));
    }

    #[test]
    fn empty_body_scores_one() {
        let s = score_readability("class MainActivity {\n    public static void main() {\n    }\n}\n").unwrap();
        assert_eq!(s.features, Features { lines: 0, identifiers: 0, tokens_per_line: 0.0 });
        assert_eq!(s.value, 1.0);
    }

    #[test]
    fn features_of_a_guarded_slice() {
        let s = score_readability(
            "class MainActivity {\n    public static void main() {\n        if (android.os.Build.VERSION.SDK_INT >= 23) {\n            tp.setHour(hour);\n        } else {\n            tp.setCurrentHour(hour);\n        }\n    }\n}\n",
        )
        .unwrap();
        assert_eq!(s.features.lines, 4);
        assert_eq!(s.features.identifiers, 2);
    }

    #[test]
    fn temporaries_lower_the_score() {
        let normalized = "class MainActivity {\n    public static void main() {\n        float parameterVariable0 = left;\n        Canvas classNameVariable = mCanvas;\n        if (VERSION.SDK_INT >= 21) {\n            classNameVariable.saveLayer(parameterVariable0);\n        } else {\n            classNameVariable.saveLayer(parameterVariable0, 0);\n        }\n    }\n}\n";
        let denormalized = "class MainActivity {\n    public static void main() {\n        if (VERSION.SDK_INT >= 21) {\n            mCanvas.saveLayer(left);\n        } else {\n            mCanvas.saveLayer(left, 0);\n        }\n    }\n}\n";
        assert!(score_readability(denormalized).unwrap().value > score_readability(normalized).unwrap().value);
    }
}
