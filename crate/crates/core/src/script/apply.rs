use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::flow::DefinitionKind;
use crate::mapping::ApiSignature;
use crate::normalize::{denormalize_unit, normalize_invocation, ReceiverKind, TempSelection, PARAMETER_VARIABLE};
use crate::syntax::lexer::{tokenize, TokenKind};
use crate::syntax::query::{class_path, enclosing_guard, enclosing_statement, find_calls, find_class_by_path, identifiers, line_indent};
use crate::syntax::{parse, EditSet, NodeId, NodeKind, ParseError, SourceUnit};

use super::copy::{insert_definitions, plan_renames, RenamePlan};
use super::model::{CarriedDefinition, MetaKind, PatternCall, UpdateScript, RECEIVER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Updated,
    SkippedAlreadyGuarded,
    SkippedDuplicateInStatement,
    Failed,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Updated => "updated",
            Outcome::SkippedAlreadyGuarded => "skipped-already-guarded",
            Outcome::SkippedDuplicateInStatement => "skipped-duplicate-in-statement",
            Outcome::Failed => "failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteOutcome {
    pub line: usize,
    pub column: usize,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseMs {
    pub creation: f64,
    pub application: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct UpdateReport {
    pub target: String,
    pub outcomes: Vec<SiteOutcome>,
    pub diagnostics: Vec<String>,
    /// Final simple names of the definitions the output relies on.
    pub copied_definitions: Vec<String>,
    pub phase_ms: PhaseMs,
}

impl UpdateReport {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.outcomes.iter().filter(|o| o.outcome == outcome).count()
    }

    pub fn counts(&self) -> BTreeMap<Outcome, usize> {
        let mut m = BTreeMap::new();
        for o in &self.outcomes {
            *m.entry(o.outcome).or_insert(0) += 1;
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApplyError {
    #[error("script pattern contains no method call")]
    NoPatternCall,
    #[error("updated code does not parse: {0}")]
    Output(#[from] ParseError),
}

#[derive(Debug, Clone)]
pub struct ApplyOptions {
    /// Inline temporaries afterwards. Off gives the raw normalized form.
    pub denormalize: bool,
    /// Deprecated signature, used to type temporaries when the target does not.
    pub signature: Option<ApiSignature>,
}

impl Default for ApplyOptions {
    fn default() -> Self {
        ApplyOptions { denormalize: true, signature: None }
    }
}

pub fn apply_script(script: &UpdateScript, target: &SourceUnit) -> Result<(SourceUnit, UpdateReport), ApplyError> {
    apply_script_with(script, target, &ApplyOptions::default())
}

/// Reasons a matched site could not be bound to the pattern.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BindFailure {
    #[error("pattern expects a receiver but the call has none")]
    MissingReceiver,
    #[error("pattern has no receiver but the call has one")]
    UnexpectedReceiver,
    #[error("{0}")]
    Normalize(String),
}

struct Site {
    start: usize,
    method: String,
}

pub fn apply_script_with(
    script: &UpdateScript,
    target: &SourceUnit,
    options: &ApplyOptions,
) -> Result<(SourceUnit, UpdateReport), ApplyError> {
    let pattern = script.pattern_call().ok_or(ApplyError::NoPatternCall)?;
    let mut report = UpdateReport { target: target.path.clone().unwrap_or_default(), ..Default::default() };

    let sites = find_calls(target, &pattern.method, pattern.arity);
    let mut outcomes: Vec<Option<(Outcome, Option<String>)>> = vec![None; sites.len()];
    let mut pending = Vec::new();
    let mut claimed: BTreeSet<NodeId> = BTreeSet::new();
    for (i, &call) in sites.iter().enumerate() {
        if enclosing_guard(target, call).is_some() {
            outcomes[i] = Some((Outcome::SkippedAlreadyGuarded, None));
            continue;
        }
        match enclosing_statement(target, call) {
            Some(stmt) if !claimed.insert(stmt) => {
                outcomes[i] = Some((Outcome::SkippedDuplicateInStatement, Some("statement already holds an updated invocation".into())));
            }
            _ => pending.push(i),
        }
    }

    let plan = plan_renames(target, &script.carried_definitions);
    let mut current = target.clone();
    let mut temp_names: Vec<String> = script.binding_names().map(str::to_string).collect();
    let mut method_hosts: BTreeSet<String> = BTreeSet::new();
    let mut class_hosts: BTreeSet<String> = BTreeSet::new();
    for &i in pending.iter().rev() {
        let call = sites[i];
        let site = Site { start: target.span(call).start, method: pattern.method.clone() };
        match update_site(script, &pattern, &current, &site, &plan, options) {
            Ok(done) => {
                current = done.unit;
                temp_names.extend(done.temps);
                report.diagnostics.extend(done.diagnostics);
                if let Some(class) = crate::syntax::query::enclosing_class(target, call) {
                    method_hosts.insert(class_path(target, class));
                    let top = std::iter::once(class)
                        .chain(target.ancestors(class))
                        .filter(|a| matches!(target.kind(*a), NodeKind::ClassDecl { .. }))
                        .last()
                        .unwrap_or(class);
                    class_hosts.insert(class_path(target, top));
                }
                outcomes[i] = Some((Outcome::Updated, None));
            }
            Err(e) => outcomes[i] = Some((Outcome::Failed, Some(e.to_string()))),
        }
    }

    for (i, &call) in sites.iter().enumerate() {
        let (line, column) = target.line_col(target.span(call).start);
        let (outcome, detail) = outcomes[i].clone().expect("every site classified");
        if let Some(d) = &detail {
            report.diagnostics.push(format!("{line}:{column}: {outcome}: {d}"));
        }
        report.outcomes.push(SiteOutcome { line, column, outcome, detail });
    }

    if report.count(Outcome::Updated) == 0 {
        return Ok((target.clone(), report));
    }

    let mut placements: Vec<(NodeId, Vec<CarriedDefinition>)> = Vec::new();
    let mut place = |path: &str, def: &CarriedDefinition, unit: &SourceUnit| {
        if let Some(host) = find_class_by_path(unit, path) {
            match placements.iter_mut().find(|(h, _)| *h == host) {
                Some((_, defs)) => defs.push(def.clone()),
                None => placements.push((host, vec![def.clone()])),
            }
        }
    };
    for def in &script.carried_definitions {
        let hosts = if def.kind == DefinitionKind::Method { &method_hosts } else { &class_hosts };
        for path in hosts {
            place(path, def, &current);
        }
    }
    current = insert_definitions(&current, &placements, &plan)?;
    report.copied_definitions = script.carried_definitions.iter().map(|d| plan.final_name(d)).collect();
    for (old, new) in &plan.renames {
        report.diagnostics.push(format!("copied definition `{old}` renamed to `{new}`"));
    }

    if options.denormalize {
        let d = denormalize_unit(&current, TempSelection::Names(&temp_names))?;
        report.diagnostics.extend(d.diagnostics());
        current = d.unit;
    }
    let out = crate::syntax::parse_with_path(&current.text, target.path.clone())?;
    Ok((out, report))
}

struct SiteUpdate {
    unit: SourceUnit,
    temps: Vec<String>,
    diagnostics: Vec<String>,
}

fn update_site(
    script: &UpdateScript,
    pattern: &PatternCall,
    unit: &SourceUnit,
    site: &Site,
    plan: &RenamePlan,
    options: &ApplyOptions,
) -> Result<SiteUpdate, BindFailure> {
    let call = unit
        .ids()
        .find(|id| {
            unit.span(*id).start == site.start
                && matches!(unit.kind(*id), NodeKind::MethodInvocation { name, .. } if name.text == site.method)
        })
        .ok_or_else(|| BindFailure::Normalize("invocation no longer present".into()))?;
    let receiver = unit.invocation_receiver(call);
    match (pattern.has_receiver, receiver.is_some()) {
        (true, false) => return Err(BindFailure::MissingReceiver),
        (false, true) => return Err(BindFailure::UnexpectedReceiver),
        _ => {}
    }
    let receiver_text = receiver.map(|r| unit.text_of(r).to_string());
    let (normalized, record) =
        normalize_invocation(unit, call, options.signature.as_ref()).map_err(|e| BindFailure::Normalize(e.to_string()))?;

    let mut bindings: HashMap<String, String> = HashMap::new();
    if pattern.has_receiver {
        let recv = match record.receiver_kind {
            ReceiverKind::Instance => record.introduced[0].name.clone(),
            _ => receiver_text.unwrap_or_default(),
        };
        bindings.insert(RECEIVER.to_string(), recv);
    }
    let args: Vec<&str> = record.introduced.iter().map(|t| t.name.as_str()).filter(|n| n.starts_with(PARAMETER_VARIABLE)).collect();
    for (k, name) in args.iter().enumerate() {
        bindings.insert(super::model::arg_metavariable(k), name.to_string());
    }
    for m in &script.metavariables {
        if !bindings.contains_key(&m.name) && m.kind != MetaKind::Type {
            return Err(BindFailure::Normalize(format!("metavariable `{}` has no value at this site", m.name)));
        }
    }
    let mut taken = identifiers(&normalized.text);
    let mut binding_renames = BTreeMap::new();
    for b in script.binding_names() {
        if taken.contains(b) {
            let fresh = (1..).map(|k| format!("{b}_{k}")).find(|n| !taken.contains(n)).unwrap();
            taken.insert(fresh.clone());
            binding_renames.insert(b.to_string(), fresh);
        }
    }
    let mut instantiated = substitute(&script.template_text(), |name| {
        bindings.get(name).or_else(|| binding_renames.get(name)).or_else(|| plan.renames.get(name)).cloned()
    });
    if let Some(tmp) = &record.result_temp {
        instantiated = assign_branch_results(&instantiated, tmp)
            .ok_or_else(|| BindFailure::Normalize("template branches do not end in a call statement".into()))?;
    }
    let indent = line_indent(&normalized.text, record.call_statement.start).to_string();
    let reindented = instantiated.lines().enumerate().fold(String::new(), |mut acc, (i, l)| {
        if i > 0 {
            acc.push('\n');
            if !l.is_empty() {
                acc.push_str(&indent);
            }
        }
        acc.push_str(l);
        acc
    });
    let mut edits = EditSet::new();
    edits.replace(record.call_statement, reindented).expect("single edit");
    let text = edits.apply(&normalized.text);
    let out = crate::syntax::parse_with_path(&text, unit.path.clone())
        .map_err(|e| BindFailure::Normalize(format!("instantiated template does not parse: {e}")))?;
    let mut temps: Vec<String> = record.temp_names().map(str::to_string).collect();
    temps.extend(binding_renames.into_values());
    Ok(SiteUpdate { unit: out, temps, diagnostics: record.diagnostics })
}

/// Token-level substitution of identifiers.
fn substitute(text: &str, mut f: impl FnMut(&str) -> Option<String>) -> String {
    let Ok(tokens) = tokenize(text) else { return text.to_string() };
    let mut edits = EditSet::new();
    for t in tokens.iter().filter(|t| t.kind == TokenKind::Ident) {
        if let Some(r) = f(t.span.slice(text)) {
            edits.replace(t.span, r).expect("tokens are disjoint");
        }
    }
    edits.apply(text)
}

/// Prefix the final call statement of each branch with `tmp = `.
fn assign_branch_results(template: &str, tmp: &str) -> Option<String> {
    let unit = parse(template).ok()?;
    let guard = *unit.children(unit.root()).first()?;
    let (_, then, els) = unit.if_parts(guard);
    let mut edits = EditSet::new();
    for branch in [Some(then), els].into_iter().flatten() {
        let last = *unit.children(branch).last()?;
        if !matches!(unit.kind(last), NodeKind::ExprStmt) {
            return None;
        }
        edits.insert(unit.span(last).start, format!("{tmp} = ")).ok()?;
    }
    Some(edits.apply(template))
}
