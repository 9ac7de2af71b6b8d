use crate::normalize::is_scheme_name;
use crate::syntax::query::{declared_type_and_method_names, find_calls, identifiers, is_guard_if};
use crate::syntax::{parse, SourceUnit};

use super::model::UpdateScript;

/// Result of checking an updated file against the correct-update shape.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShapeCheck {
    /// Guards holding the replacement call in the true branch and the
    /// deprecated call in the else branch.
    pub guarded_pairs: usize,
    pub problems: Vec<String>,
}

impl ShapeCheck {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Check `output` holds at least `updated` correctly shaped guards, declares
/// every name in `definitions`, and (when `denormalized`) has no temporaries left.
pub fn check_update_shape(output: &str, script: &UpdateScript, updated: usize, definitions: &[String], denormalized: bool) -> ShapeCheck {
    let mut check = ShapeCheck::default();
    let unit = match parse(output) {
        Ok(u) => u,
        Err(e) => {
            check.problems.push(format!("output does not parse: {e}"));
            return check;
        }
    };
    let (Some(old), Some(new)) = (script.pattern_call(), script.replacement_call()) else {
        check.problems.push("script has no recognisable calls".into());
        return check;
    };
    let same_shape = old.method == new.method && old.arity == new.arity;
    check.guarded_pairs = guarded_pairs(&unit, (&old.method, old.arity), (&new.method, new.arity), same_shape);
    if check.guarded_pairs < updated {
        check.problems.push(format!(
            "{updated} updated invocation(s) but only {} guard(s) with {new} in the true branch and {old} in the else branch",
            check.guarded_pairs
        ));
    }
    let declared = declared_type_and_method_names(&unit);
    for d in definitions {
        if !declared.contains(d) {
            check.problems.push(format!("definition `{d}` missing from output"));
        }
    }
    if denormalized {
        let leftovers: Vec<String> = identifiers(output).into_iter().filter(|n| is_scheme_name(n)).collect();
        if !leftovers.is_empty() {
            check.problems.push(format!("temporaries left in output: {}", leftovers.join(", ")));
        }
    }
    check
}

fn guarded_pairs(unit: &SourceUnit, old: (&str, usize), new: (&str, usize), same_shape: bool) -> usize {
    let olds = find_calls(unit, old.0, old.1);
    let news = find_calls(unit, new.0, new.1);
    unit.ids()
        .filter(|id| is_guard_if(unit, *id))
        .filter(|g| {
            let (_, then, els) = unit.if_parts(*g);
            let Some(els) = els else { return false };
            let within = |calls: &[crate::syntax::NodeId], b| calls.iter().filter(|c| unit.is_ancestor(b, **c)).count();
            let shape = within(&news, then) == 1 && within(&olds, els) == 1;
            shape && (same_shape || (within(&olds, then) == 0 && within(&news, els) == 0))
        })
        .count()
}
