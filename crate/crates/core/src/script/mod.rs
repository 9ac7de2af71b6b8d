//! Update scripts: generation from an example, the `.aes` text format, and
//! application to target files.

mod apply;
mod check;
mod copy;
mod format;
mod generate;
mod model;

pub use apply::{apply_script, apply_script_with, ApplyError, ApplyOptions, BindFailure, Outcome, PhaseMs, SiteOutcome, UpdateReport};
pub use check::{check_update_shape, ShapeCheck};
pub use copy::{copy_definitions, make_public, plan_renames, rename_identifiers, Copied, RenamePlan};
pub use format::{guard_from_template, parse_script, serialize_script, ScriptError};
pub use generate::{generate, generate_script, locate_example, ExampleSites, GenerateError, Generated};
pub use model::{
    arg_metavariable, is_reserved_metavariable, CarriedBinding, CarriedDefinition, Guard, MetaKind, Metavariable, PatternCall,
    UpdateScript, RECEIVER,
};

#[cfg(test)]
mod tests;
