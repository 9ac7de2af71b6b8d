//! The `.aes` text format.
//!
//! ```text
//! @update_getCurrentMinute@
//! identifier recv;
//! @@
//! - recv.getCurrentMinute();
//! + if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
//! +     recv.getMinute();
//! + } else {
//! +     recv.getCurrentMinute();
//! + }
//! ```
//!
//! optionally followed by `@defs@` (each definition introduced by a
//! `// method Outer.name` or `// class Outer.Name` line) and `@bind@`
//! (`name = expression;` lines).

use std::collections::BTreeSet;

use crate::flow::DefinitionKind;
use crate::mapping::guard_symbol_level;
use crate::syntax::lexer::{tokenize, TokenKind};

use super::model::{is_reserved_metavariable, CarriedBinding, CarriedDefinition, Guard, MetaKind, Metavariable, UpdateScript};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: undeclared metavariable `{name}`")]
    UndeclaredMetavariable { line: usize, name: String },
}

pub fn serialize_script(script: &UpdateScript) -> String {
    let mut out = format!("@{}@\n", script.name);
    for m in &script.metavariables {
        out.push_str(&format!("{} {};\n", m.kind.keyword(), m.name));
    }
    out.push_str("@@\n");
    let prefixed = |out: &mut String, sign: char, line: &str| {
        if line.is_empty() {
            out.push(sign);
        } else {
            out.push(sign);
            out.push(' ');
            out.push_str(line);
        }
        out.push('\n');
    };
    for l in &script.match_pattern {
        prefixed(&mut out, '-', l);
    }
    for l in &script.replacement_template {
        prefixed(&mut out, '+', l);
    }
    if !script.carried_definitions.is_empty() {
        out.push_str("@defs@\n");
        for d in &script.carried_definitions {
            out.push_str(&format!("// {} {}\n", d.kind, d.qualified_name));
            out.push_str(&d.text);
            out.push('\n');
        }
    }
    if !script.carried_bindings.is_empty() {
        out.push_str("@bind@\n");
        for b in &script.carried_bindings {
            out.push_str(&format!("{} = {};\n", b.name, b.expression));
        }
    }
    out
}

fn definition_marker(line: &str) -> Option<(DefinitionKind, &str)> {
    let rest = line.strip_prefix("// ")?;
    let (kind, name) = rest.split_once(' ')?;
    let kind = match kind {
        "method" => DefinitionKind::Method,
        "class" => DefinitionKind::Class,
        _ => return None,
    };
    let valid =
        !name.is_empty() && name.split('.').all(|s| !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '$'));
    valid.then_some((kind, name))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_' || c == '$') && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
}

/// Extract the guard from the template's first line.
pub fn guard_from_template(first: &str) -> Option<Guard> {
    let cond = first.trim().strip_prefix("if")?.trim_start().strip_prefix('(')?;
    let cond = cond.trim_end().strip_suffix('{')?.trim_end().strip_suffix(')')?;
    let (_, rhs) = cond.split_once(">=")?;
    let (lhs, _) = cond.split_once(">=")?;
    if !crate::syntax::query::mentions_sdk_int(lhs) {
        return None;
    }
    let symbol = rhs.trim().to_string();
    let level = guard_symbol_level(&symbol)?;
    Some(Guard { symbol, level })
}

pub fn parse_script(text: &str) -> Result<UpdateScript, ScriptError> {
    let syntax = |line: usize, message: &str| ScriptError::Syntax { line, message: message.to_string() };
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.first().ok_or_else(|| syntax(1, "empty script"))?;
    let name = header
        .strip_prefix('@')
        .and_then(|h| h.strip_suffix('@'))
        .filter(|n| is_identifier(n))
        .ok_or_else(|| syntax(1, "expected `@name@` header"))?
        .to_string();

    let mut i = 1;
    let mut metavariables = Vec::new();
    while i < lines.len() && lines[i] != "@@" {
        let line = lines[i].trim();
        if !line.is_empty() {
            let decl = line.strip_suffix(';').ok_or_else(|| syntax(i + 1, "metavariable declaration must end with `;`"))?;
            let (kind, mname) = decl.split_once(' ').ok_or_else(|| syntax(i + 1, "expected `kind name;`"))?;
            let kind = MetaKind::from_keyword(kind).ok_or_else(|| syntax(i + 1, "unknown metavariable kind"))?;
            let mname = mname.trim();
            if !is_identifier(mname) {
                return Err(syntax(i + 1, "invalid metavariable name"));
            }
            if metavariables.iter().any(|m: &Metavariable| m.name == mname) {
                return Err(syntax(i + 1, "metavariable declared twice"));
            }
            metavariables.push(Metavariable { kind, name: mname.to_string() });
        }
        i += 1;
    }
    if i >= lines.len() {
        return Err(syntax(lines.len() + 1, "missing `@@` separator"));
    }
    i += 1;

    let mut match_pattern = Vec::new();
    let mut replacement_template = Vec::new();
    let mut template_start = 0;
    let body_line = |l: &str, sign: char| -> Option<String> {
        let rest = l.strip_prefix(sign)?;
        if rest.is_empty() {
            Some(String::new())
        } else {
            rest.strip_prefix(' ').map(str::to_string)
        }
    };
    while i < lines.len() && !lines[i].starts_with("@defs@") && !lines[i].starts_with("@bind@") {
        let l = lines[i];
        if let Some(p) = body_line(l, '-') {
            if !replacement_template.is_empty() {
                return Err(syntax(i + 1, "pattern lines must precede template lines"));
            }
            match_pattern.push(p);
        } else if let Some(t) = body_line(l, '+') {
            if replacement_template.is_empty() {
                template_start = i + 1;
            }
            replacement_template.push(t);
        } else if !l.trim().is_empty() {
            return Err(syntax(i + 1, "expected a `- ` or `+ ` line"));
        }
        i += 1;
    }
    if match_pattern.is_empty() {
        return Err(syntax(i + 1, "missing `-` pattern lines"));
    }
    if replacement_template.is_empty() {
        return Err(syntax(i + 1, "missing `+` template lines"));
    }
    let guard = guard_from_template(&replacement_template[0])
        .ok_or_else(|| syntax(template_start, "template must open with `if (...SDK_INT >= <version>) {`"))?;

    let mut carried_definitions: Vec<CarriedDefinition> = Vec::new();
    if i < lines.len() && lines[i] == "@defs@" {
        i += 1;
        let mut current: Option<(DefinitionKind, String, Vec<&str>)> = None;
        while i < lines.len() && lines[i] != "@bind@" {
            if let Some((kind, qname)) = definition_marker(lines[i]) {
                if let Some((k, q, body)) = current.take() {
                    carried_definitions.push(finish_definition(k, q, &body, i)?);
                }
                current = Some((kind, qname.to_string(), Vec::new()));
            } else if let Some((_, _, body)) = current.as_mut() {
                body.push(lines[i]);
            } else if !lines[i].trim().is_empty() {
                return Err(syntax(i + 1, "expected `// method <name>` or `// class <name>`"));
            }
            i += 1;
        }
        if let Some((k, q, body)) = current.take() {
            carried_definitions.push(finish_definition(k, q, &body, i)?);
        }
    }
    let mut carried_bindings = Vec::new();
    if i < lines.len() && lines[i] == "@bind@" {
        i += 1;
        while i < lines.len() {
            let line = lines[i];
            if !line.trim().is_empty() {
                let (bname, expr) = line.split_once(" = ").ok_or_else(|| syntax(i + 1, "expected `name = expression;`"))?;
                let expr = expr.strip_suffix(';').ok_or_else(|| syntax(i + 1, "binding must end with `;`"))?;
                if !is_identifier(bname) {
                    return Err(syntax(i + 1, "invalid binding name"));
                }
                carried_bindings.push(CarriedBinding { name: bname.to_string(), expression: expr.to_string() });
            }
            i += 1;
        }
    }
    if i < lines.len() {
        return Err(syntax(i + 1, "unexpected content"));
    }

    let script = UpdateScript { name, metavariables, guard, match_pattern, replacement_template, carried_definitions, carried_bindings };
    check_metavariables(&script, template_start)?;
    check_shape(&script, template_start)?;
    Ok(script)
}

fn finish_definition(kind: DefinitionKind, qualified_name: String, body: &[&str], line: usize) -> Result<CarriedDefinition, ScriptError> {
    let text = body.join("\n").trim_end().to_string();
    if text.is_empty() {
        return Err(ScriptError::Syntax { line, message: format!("definition `{qualified_name}` has no body") });
    }
    Ok(CarriedDefinition { kind, qualified_name, text })
}

/// Every identifier in the metavariable namespace used by the pattern,
/// template or bindings must be declared.
fn check_metavariables(script: &UpdateScript, template_start: usize) -> Result<(), ScriptError> {
    let declared: BTreeSet<&str> = script.metavariables.iter().map(|m| m.name.as_str()).collect();
    let pattern_start = template_start.saturating_sub(script.match_pattern.len()).max(1);
    let sources = script
        .match_pattern
        .iter()
        .enumerate()
        .map(|(k, l)| (pattern_start + k, l.as_str()))
        .chain(script.replacement_template.iter().enumerate().map(|(k, l)| (template_start + k, l.as_str())));
    for (line, text) in sources {
        let toks = tokenize(text).map_err(|e| ScriptError::Syntax { line, message: e.message })?;
        for t in toks.iter().filter(|t| t.kind == TokenKind::Ident) {
            let name = t.span.slice(text);
            if is_reserved_metavariable(name) && !declared.contains(name) {
                return Err(ScriptError::UndeclaredMetavariable { line, name: name.to_string() });
            }
        }
    }
    Ok(())
}

/// The template must parse and hold exactly one guard if/else with a call in
/// each branch.
fn check_shape(script: &UpdateScript, template_start: usize) -> Result<(), ScriptError> {
    use crate::syntax::NodeKind;
    let err = |message: String| ScriptError::Syntax { line: template_start, message };
    let unit = crate::syntax::parse(&script.template_text()).map_err(|e| err(format!("template does not parse: {e}")))?;
    let top = unit.children(unit.root());
    if top.len() != 1 || !crate::syntax::query::is_guard_if(&unit, top[0]) {
        return Err(err("template must be a single version-guard if statement".into()));
    }
    let (_, then, els) = unit.if_parts(top[0]);
    let Some(els) = els else { return Err(err("template needs an else branch".into())) };
    for branch in [then, els] {
        let has_call = unit.descendants(branch).iter().any(|d| matches!(unit.kind(*d), NodeKind::MethodInvocation { .. }));
        if !matches!(unit.kind(branch), NodeKind::Block) || !has_call {
            return Err(err("each template branch must be a block containing a call".into()));
        }
    }
    if script.pattern_call().is_none() {
        return Err(ScriptError::Syntax { line: template_start.saturating_sub(1).max(1), message: "pattern has no method call".into() });
    }
    Ok(())
}
