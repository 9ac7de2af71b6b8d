use crate::flow::{resolve_expression, UnresolvedReason};
use crate::mapping::{guard_symbol_level, simple_type_name, ApiMapping, ApiSignature};
use crate::syntax::query::{declared_type, find_calls, identifiers, is_guard_if};
use crate::syntax::{Expr, NodeId, NodeKind, SourceUnit};

use super::model::{arg_metavariable, CarriedBinding, CarriedDefinition, Guard, MetaKind, Metavariable, UpdateScript, RECEIVER};
use crate::normalize::NEW_PARAMETER_VARIABLE;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("no version guard found")]
    NoGuardFound,
    #[error("both branches of the version guard make the same call")]
    BothBranchesSameApi,
    #[error("no version guard has `{deprecated}` in one branch and `{replacement}` in the other")]
    MissingInvocation { deprecated: String, replacement: String },
    #[error("argument {index} of the replacement call uses `{name}`, which cannot be resolved ({reason})")]
    UnresolvedNewArgument { index: usize, name: String, reason: UnresolvedReason },
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub script: UpdateScript,
    pub diagnostics: Vec<String>,
}

pub fn generate_script(example: &SourceUnit, mapping: &ApiMapping) -> Result<UpdateScript, GenerateError> {
    generate(example, mapping).map(|g| g.script)
}

/// The guard and the two calls an example demonstrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExampleSites {
    pub guard: NodeId,
    pub deprecated_call: NodeId,
    pub replacement_call: NodeId,
}

fn first_call_in(unit: &SourceUnit, branch: NodeId, sig: &ApiSignature) -> Option<NodeId> {
    find_calls(unit, &sig.method, sig.arity()).into_iter().find(|c| unit.is_ancestor(branch, *c))
}

/// Whether the condition's true outcome means "new enough" (`SDK_INT >= x`).
fn true_branch_is_new(unit: &SourceUnit, cond: NodeId) -> bool {
    for id in unit.descendants(cond) {
        if let NodeKind::BinaryExpr { op } = unit.kind(id) {
            let lhs = unit.children(id)[0];
            let sdk_left = crate::syntax::query::mentions_sdk_int(unit.text_of(lhs));
            let upward = match op.as_str() {
                ">=" | ">" => true,
                "<" | "<=" => false,
                _ => continue,
            };
            return upward == sdk_left;
        }
    }
    true
}

pub fn locate_example(unit: &SourceUnit, mapping: &ApiMapping) -> Result<ExampleSites, GenerateError> {
    let old = &mapping.deprecated;
    let new = &mapping.replacement;
    let guards: Vec<NodeId> = unit.ids().filter(|id| is_guard_if(unit, *id)).collect();
    if guards.is_empty() {
        return Err(GenerateError::NoGuardFound);
    }
    let same_shape = old.method == new.method && old.arity() == new.arity();
    for g in guards {
        let (cond, then, Some(els)) = unit.if_parts(g) else { continue };
        let forward = (first_call_in(unit, then, new), first_call_in(unit, els, old));
        let backward = (first_call_in(unit, els, new), first_call_in(unit, then, old));
        let pick = match (forward, backward) {
            ((Some(n), Some(o)), (Some(n2), Some(o2))) if same_shape => {
                if true_branch_is_new(unit, cond) {
                    Some((n, o))
                } else {
                    Some((n2, o2))
                }
            }
            ((Some(n), Some(o)), _) => Some((n, o)),
            (_, (Some(n), Some(o))) => Some((n, o)),
            _ => None,
        };
        if let Some((n, o)) = pick {
            if unit.text_of(n) == unit.text_of(o) {
                return Err(GenerateError::BothBranchesSameApi);
            }
            return Ok(ExampleSites { guard: g, deprecated_call: o, replacement_call: n });
        }
    }
    Err(GenerateError::MissingInvocation { deprecated: old.to_string(), replacement: new.to_string() })
}

pub fn generate(example: &SourceUnit, mapping: &ApiMapping) -> Result<Generated, GenerateError> {
    let sites = locate_example(example, mapping)?;
    let mut diagnostics = Vec::new();
    let old_call = sites.deprecated_call;
    let new_call = sites.replacement_call;

    let old_args: Vec<Expr> = example
        .invocation_args(old_call)
        .iter()
        .map(|a| {
            let r = resolve_expression(example, *a);
            diagnostics.extend(r.diagnostics);
            r.expression
        })
        .collect();

    let old_receiver = example.invocation_receiver(old_call);
    let new_receiver = example.invocation_receiver(new_call);
    let mut definitions: Vec<CarriedDefinition> = Vec::new();
    let add_defs = |defs: &[crate::flow::Definition], out: &mut Vec<CarriedDefinition>| {
        for d in defs {
            if !out.iter().any(|c| c.qualified_name == d.qualified_name && c.kind == d.kind) {
                out.push(CarriedDefinition::from_definition(d, &example.text));
            }
        }
    };

    let receiver_text = match (old_receiver, new_receiver) {
        (_, None) => None,
        (Some(o), Some(n)) if same_receiver(example, o, n) => Some(RECEIVER.to_string()),
        (_, Some(n)) => {
            let r = resolve_expression(example, n);
            if let Some(u) = r.unresolved.first() {
                if identifiers(&r.expression.to_java()).contains(&u.name) {
                    diagnostics.push(format!("receiver `{}` of the replacement call is unresolved ({})", u.name, u.reason));
                }
            }
            add_defs(&r.required_definitions, &mut definitions);
            Some(r.expression.to_java())
        }
    };

    let mut template_args = Vec::new();
    let mut bindings: Vec<(String, String, Expr)> = Vec::new(); // (name, type, value)
    for (i, a) in example.invocation_args(new_call).iter().enumerate() {
        let r = resolve_expression(example, *a);
        diagnostics.extend(r.diagnostics.iter().cloned());
        let hole = |e: &Expr| -> Option<usize> {
            if old_args.get(i) == Some(e) {
                return Some(i);
            }
            old_args.iter().position(|o| o == e)
        };
        let value = match hole(&r.expression) {
            Some(k) => Expr::name(arg_metavariable(k)),
            None => r.expression.clone().replace_subtrees(&mut |s| {
                if matches!(s, Expr::Literal(_)) {
                    return None;
                }
                hole(s).map(|k| Expr::name(arg_metavariable(k)))
            }),
        };
        if let Expr::Name(n) = &value {
            if super::model::is_reserved_metavariable(n) {
                template_args.push(n.clone());
                continue;
            }
        }
        let mentioned = identifiers(&value.to_java());
        if let Some(u) = r.unresolved.iter().find(|u| mentioned.contains(&u.name)) {
            return Err(GenerateError::UnresolvedNewArgument { index: i, name: u.name.clone(), reason: u.reason });
        }
        add_defs(&r.required_definitions, &mut definitions);
        let ty = mapping
            .replacement
            .simple_param_type(i)
            .map(|t| t.trim_end_matches("...").to_string())
            .or_else(|| match example.kind(*a) {
                NodeKind::NameExpr { name } => declared_type(example, name, *a).map(|t| simple_type_name(&t).to_string()),
                _ => None,
            })
            .unwrap_or_else(|| {
                diagnostics.push(format!("type of replacement argument {i} unknown; declared as Object"));
                "Object".to_string()
            });
        let name = format!("{NEW_PARAMETER_VARIABLE}{}", bindings.len());
        template_args.push(name.clone());
        bindings.push((name, ty, value));
    }

    let mut metavariables = Vec::new();
    if old_receiver.is_some() {
        metavariables.push(Metavariable { kind: MetaKind::Identifier, name: RECEIVER.into() });
    }
    let old_params: Vec<String> = (0..old_args.len()).map(arg_metavariable).collect();
    for p in &old_params {
        metavariables.push(Metavariable { kind: MetaKind::Expression, name: p.clone() });
    }
    let call = |receiver: Option<&str>, method: &str, args: &[String]| match receiver {
        Some(r) => format!("{r}.{method}({})", args.join(", ")),
        None => format!("{method}({})", args.join(", ")),
    };
    let old_text = call(old_receiver.map(|_| RECEIVER), &mapping.deprecated.method, &old_params);
    let new_text = call(receiver_text.as_deref(), &mapping.replacement.method, &template_args);

    let symbol =
        if guard_symbol_level(&mapping.guard_symbol).is_some() { mapping.guard_symbol.clone() } else { mapping.guard_level.to_string() };
    let guard = Guard { symbol, level: mapping.guard_level };
    let mut template = vec![format!("if ({}) {{", guard.condition())];
    for (name, ty, value) in &bindings {
        template.push(format!("    {ty} {name} = {value};"));
    }
    template.push(format!("    {new_text};"));
    template.push("} else {".into());
    template.push(format!("    {old_text};"));
    template.push("}".into());

    let script = UpdateScript {
        name: format!("update_{}", mapping.deprecated.method),
        metavariables,
        guard,
        match_pattern: vec![format!("{old_text};")],
        replacement_template: template,
        carried_definitions: definitions,
        carried_bindings: bindings.into_iter().map(|(name, _, value)| CarriedBinding { name, expression: value.to_java() }).collect(),
    };
    Ok(Generated { script, diagnostics })
}

fn same_receiver(unit: &SourceUnit, a: NodeId, b: NodeId) -> bool {
    if unit.text_of(a).split_whitespace().eq(unit.text_of(b).split_whitespace()) {
        return true;
    }
    resolve_expression(unit, a).expression == resolve_expression(unit, b).expression
}
