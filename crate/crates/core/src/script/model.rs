use std::fmt;

use serde::{Deserialize, Serialize};

use crate::flow::{Definition, DefinitionKind};

/// Metavariable bound to the receiver of the matched call.
pub const RECEIVER: &str = "recv";

/// Name of the metavariable for the `i`th argument of the matched call.
pub fn arg_metavariable(i: usize) -> String {
    format!("e{i}")
}

/// Whether `name` is in the metavariable namespace (`recv`, `e0`, `e1`, ...).
pub fn is_reserved_metavariable(name: &str) -> bool {
    name == RECEIVER || name.strip_prefix('e').is_some_and(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetaKind {
    Expression,
    Identifier,
    Type,
}

impl MetaKind {
    pub fn keyword(self) -> &'static str {
        match self {
            MetaKind::Expression => "expression",
            MetaKind::Identifier => "identifier",
            MetaKind::Type => "type",
        }
    }

    pub fn from_keyword(s: &str) -> Option<MetaKind> {
        match s {
            "expression" => Some(MetaKind::Expression),
            "identifier" => Some(MetaKind::Identifier),
            "type" => Some(MetaKind::Type),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Metavariable {
    pub kind: MetaKind,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Guard {
    pub symbol: String,
    pub level: u32,
}

impl Guard {
    pub fn condition(&self) -> String {
        format!("android.os.Build.VERSION.SDK_INT >= {}", self.symbol)
    }
}

/// A definition carried by a script, detached from the example it came from.
/// `text` is dedented: continuation lines are relative to the first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CarriedDefinition {
    pub kind: DefinitionKind,
    pub qualified_name: String,
    pub text: String,
}

impl CarriedDefinition {
    pub fn simple_name(&self) -> &str {
        self.qualified_name.rsplit('.').next().unwrap_or(&self.qualified_name)
    }

    pub fn from_definition(def: &Definition, source: &str) -> CarriedDefinition {
        let indent = crate::syntax::query::line_indent(source, def.span.start);
        CarriedDefinition { kind: def.kind, qualified_name: def.qualified_name.clone(), text: dedent(&def.text, indent) }
    }
}

fn dedent(text: &str, indent: &str) -> String {
    let mut lines = text.lines();
    let mut out = lines.next().unwrap_or_default().to_string();
    for l in lines {
        out.push('\n');
        out.push_str(l.strip_prefix(indent).unwrap_or(l.trim_start()));
    }
    out.trim_end().to_string()
}

/// A value the replacement call needs that the deprecated call does not
/// provide, e.g. `newParameterVariable0 = new AudioAttributes.Builder().build()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CarriedBinding {
    pub name: String,
    pub expression: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdateScript {
    pub name: String,
    pub metavariables: Vec<Metavariable>,
    pub guard: Guard,
    /// Deprecated call statement, one entry per line.
    pub match_pattern: Vec<String>,
    /// Guarded if/else block, one entry per line, indented relative to the `if`.
    pub replacement_template: Vec<String>,
    pub carried_definitions: Vec<CarriedDefinition>,
    pub carried_bindings: Vec<CarriedBinding>,
}

/// The call a script's pattern matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCall {
    pub method: String,
    pub arity: usize,
    pub has_receiver: bool,
}

impl fmt::Display for PatternCall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.method, self.arity)
    }
}

impl UpdateScript {
    pub fn template_text(&self) -> String {
        self.replacement_template.join("\n")
    }

    pub fn pattern_call(&self) -> Option<PatternCall> {
        let text = self.match_pattern.join("\n");
        let unit = crate::syntax::parse(&text).ok()?;
        let found = unit.ids().find_map(|id| match unit.kind(id) {
            crate::syntax::NodeKind::MethodInvocation { name, has_receiver } => {
                Some(PatternCall { method: name.text.clone(), arity: unit.invocation_args(id).len(), has_receiver: *has_receiver })
            }
            _ => None,
        });
        found
    }

    /// The call in the version-true branch of the template.
    pub fn replacement_call(&self) -> Option<PatternCall> {
        use crate::syntax::NodeKind;
        let unit = crate::syntax::parse(&self.template_text()).ok()?;
        let guard = *unit.children(unit.root()).first()?;
        if !matches!(unit.kind(guard), NodeKind::IfStmt) {
            return None;
        }
        let then = unit.if_parts(guard).1;
        let last = *unit.children(then).last()?;
        let call = unit.children(last).first().copied()?;
        match unit.kind(call) {
            NodeKind::MethodInvocation { name, has_receiver } => {
                Some(PatternCall { method: name.text.clone(), arity: unit.invocation_args(call).len(), has_receiver: *has_receiver })
            }
            _ => None,
        }
    }

    pub fn binding_names(&self) -> impl Iterator<Item = &str> {
        self.carried_bindings.iter().map(|b| b.name.as_str())
    }
}
