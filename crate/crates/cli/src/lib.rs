//! Command implementations behind the `apievolve` binary, usable as a
//! library by the test harness.

pub mod commands;
pub mod manifest;
pub mod report;

use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use apievolve_core::script::{apply_script_with, generate, ApplyOptions, GenerateError, Generated, UpdateReport, UpdateScript};
use apievolve_core::syntax::lexer::tokenize;
use apievolve_core::syntax::parse_with_path;
use apievolve_core::{ApiMapping, SourceUnit};

pub use report::{Counts, EntrySummary, ExpectationResult, RunSummary, TargetReport, TargetStatus};

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load_mapping(path: &Path) -> Result<ApiMapping> {
    ApiMapping::parse(&read(path)?).with_context(|| format!("mapping {}", path.display()))
}

pub fn load_unit(path: &Path) -> Result<SourceUnit> {
    let text = read(path)?;
    parse_with_path(&text, Some(path.display().to_string())).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

/// Script creation with its wall-clock time.
pub fn create_script(example: &SourceUnit, mapping: &ApiMapping) -> (Result<Generated, GenerateError>, f64) {
    let start = Instant::now();
    let generated = generate(example, mapping);
    (generated, millis(start))
}

/// Result of running a script over one target file.
pub struct Applied {
    pub output: Option<SourceUnit>,
    pub report: TargetReport,
}

/// Parse `text` as `name` and apply `script` to it. Parse and output errors are
/// reported as a failed target rather than returned.
pub fn apply_to_text(script: &UpdateScript, name: &str, text: &str, options: &ApplyOptions, creation_ms: f64) -> Applied {
    let start = Instant::now();
    let result = parse_with_path(text, Some(name.to_string()))
        .map_err(|e| format!("target does not parse: {e}"))
        .and_then(|unit| apply_script_with(script, &unit, options).map_err(|e| e.to_string()));
    let application = millis(start);
    match result {
        Ok((unit, mut report)) => {
            report.target = name.to_string();
            report.phase_ms.creation = creation_ms;
            report.phase_ms.application = application;
            Applied { output: Some(unit), report: TargetReport::from_update(report) }
        }
        Err(message) => {
            let mut report = UpdateReport { target: name.to_string(), ..Default::default() };
            report.diagnostics.push(message);
            report.phase_ms.creation = creation_ms;
            report.phase_ms.application = application;
            let mut r = TargetReport::from_update(report);
            r.status = TargetStatus::Failed;
            Applied { output: None, report: r }
        }
    }
}

/// Whitespace- and comment-insensitive equality.
pub fn same_tokens(a: &str, b: &str) -> bool {
    match (tokenize(a), tokenize(b)) {
        (Ok(x), Ok(y)) => x.len() == y.len() && x.iter().zip(&y).all(|(p, q)| p.span.slice(a) == q.span.slice(b)),
        _ => false,
    }
}
