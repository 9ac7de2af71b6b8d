use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use apievolve_core::readability::score_api_usage;
use apievolve_core::script::{parse_script, serialize_script, ApplyOptions, GenerateError, PhaseMs, UpdateReport};
use apievolve_core::ApiMapping;
use rayon::prelude::*;

use crate::manifest::Manifest;
use crate::report::{Counts, EntrySummary, ExpectationResult, RunSummary, ScriptFailure, TargetReport, TargetStatus};
use crate::{apply_to_text, create_script, load_mapping, load_unit, read, same_tokens};

pub fn create_script_cmd(example: &Path, mapping: &Path, out: &Path) -> Result<u8> {
    let mapping = load_mapping(mapping)?;
    let unit = load_unit(example)?;
    let (generated, _) = create_script(&unit, &mapping);
    let generated = generated?;
    for d in &generated.diagnostics {
        eprintln!("warning: {d}");
    }
    std::fs::write(out, serialize_script(&generated.script)).with_context(|| format!("writing {}", out.display()))?;
    Ok(0)
}

pub fn apply_cmd(script: &Path, target: &Path, out: Option<&Path>, report: Option<&Path>, denormalize: bool) -> Result<u8> {
    let script = parse_script(&read(script)?).with_context(|| format!("script {}", script.display()))?;
    let name = target.display().to_string();
    let unit = load_unit(target)?;
    let options = ApplyOptions { denormalize, ..Default::default() };
    let applied = apply_to_text(&script, &name, &unit.text, &options, 0.0);
    let Some(output) = applied.output else {
        bail!("{}", applied.report.diagnostics.join("; "));
    };
    let dest = out.unwrap_or(target);
    if dest != target || output.text != unit.text {
        std::fs::write(dest, &output.text).with_context(|| format!("writing {}", dest.display()))?;
    }
    let json = serde_json::to_string_pretty(&applied.report)?;
    match report {
        Some(p) => std::fs::write(p, json + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => eprintln!("{json}"),
    }
    Ok(applied.report.exit_code())
}

/// (report name, text, expected output name and text)
pub type TargetInput = (String, String, Option<(String, String)>);

/// Inputs for one API run.
pub struct EntryInput {
    pub mapping_path: String,
    pub example_path: String,
    pub mapping: ApiMapping,
    pub example: String,
    pub targets: Vec<TargetInput>,
}

pub struct EntryRun {
    pub summary: EntrySummary,
    /// Updated text per target, `None` where the target could not be processed.
    pub outputs: Vec<Option<String>>,
}

fn failure_reason(e: &GenerateError) -> String {
    match e {
        GenerateError::NoGuardFound => "no-guard".into(),
        GenerateError::BothBranchesSameApi => "both-branches-same-api".into(),
        GenerateError::MissingInvocation { .. } => "missing-invocation".into(),
        GenerateError::UnresolvedNewArgument { reason, .. } => reason.to_string(),
    }
}

pub fn run_entry(input: &EntryInput, denormalize: bool) -> EntryRun {
    let api = input.mapping.deprecated.to_string();
    let example = apievolve_core::syntax::parse_with_path(&input.example, Some(input.example_path.clone()));
    let (generated, creation_ms) = match example {
        Ok(unit) => {
            let (g, ms) = create_script(&unit, &input.mapping);
            (g.map_err(|e| ScriptFailure { reason: failure_reason(&e), message: e.to_string() }), ms)
        }
        Err(e) => (Err(ScriptFailure { reason: "parse-error".into(), message: format!("example does not parse: {e}") }), 0.0),
    };
    let (reports, outputs): (Vec<TargetReport>, Vec<Option<String>>) = match &generated {
        Ok(g) => {
            let options = ApplyOptions { denormalize, signature: Some(input.mapping.deprecated.clone()) };
            input
                .targets
                .par_iter()
                .map(|(name, text, _)| {
                    let a = apply_to_text(&g.script, name, text, &options, creation_ms);
                    (a.report, a.output.map(|u| u.text))
                })
                .collect::<Vec<_>>()
                .into_iter()
                .unzip()
        }
        Err(f) => input
            .targets
            .iter()
            .map(|(name, _, _)| {
                let mut r = TargetReport::from_update(UpdateReport {
                    target: name.clone(),
                    diagnostics: vec![format!("script creation failed: {}", f.message)],
                    phase_ms: PhaseMs { creation: creation_ms, application: 0.0 },
                    ..Default::default()
                });
                r.diagnostics.retain(|d| d != "no matching invocation");
                r.status = TargetStatus::Failed;
                (r, None)
            })
            .unzip(),
    };
    let expectations: Vec<ExpectationResult> = input
        .targets
        .iter()
        .zip(&outputs)
        .filter_map(|((name, original, expected), out)| {
            let (expected_name, expected_text) = expected.as_ref()?;
            let actual = out.as_deref().unwrap_or(original);
            Some(ExpectationResult { target: name.clone(), expected: expected_name.clone(), matched: same_tokens(actual, expected_text) })
        })
        .collect();
    let counts = Counts::of(&reports);
    let n = reports.len().max(1) as f64;
    let mean_ms = PhaseMs { creation: creation_ms, application: reports.iter().map(|r| r.phase_ms.application).sum::<f64>() / n };
    let (script_failure, script_diagnostics) = match generated {
        Ok(g) => (None, g.diagnostics),
        Err(f) => (Some(f), Vec::new()),
    };
    let passed = script_failure.is_none() && counts.failed == 0 && expectations.iter().all(|e| e.matched);
    EntryRun {
        summary: EntrySummary {
            api,
            mapping: input.mapping_path.clone(),
            example: input.example_path.clone(),
            passed,
            script_failure,
            script_diagnostics,
            counts,
            mean_ms,
            expectations,
            reports,
        },
        outputs,
    }
}

fn java_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in walkdir::WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.with_context(|| format!("listing {}", dir.display()))?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|e| e == "java") {
            files.push(entry.into_path());
        }
    }
    Ok(files)
}

/// Create the script once and apply it to every `.java` file under
/// `targets`, rewriting updated files in place.
pub fn migrate(example: &Path, mapping: &Path, targets: &Path) -> Result<RunSummary> {
    let files = java_files(targets)?;
    let input = EntryInput {
        mapping_path: mapping.display().to_string(),
        example_path: example.display().to_string(),
        mapping: load_mapping(mapping)?,
        example: read(example)?,
        targets: files
            .iter()
            .map(|f| {
                let name = f.strip_prefix(targets).unwrap_or(f).display().to_string();
                Ok((name, read(f)?, None))
            })
            .collect::<Result<_>>()?,
    };
    let run = run_entry(&input, true);
    for ((path, (_, original, _)), out) in files.iter().zip(&input.targets).zip(&run.outputs) {
        if let Some(text) = out {
            if text != original {
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    Ok(RunSummary::new(vec![run.summary]))
}

pub fn migrate_cmd(example: &Path, mapping: &Path, targets: &Path, report: &Path) -> Result<u8> {
    let summary = migrate(example, mapping, targets)?;
    write_summary(&summary, report)?;
    print!("{}", summary.table());
    let clean = summary.entries.iter().all(|e| e.passed && e.reports.iter().all(|r| r.exit_code() == 0));
    Ok(if clean { 0 } else { 1 })
}

/// Run every manifest entry. Outputs are kept in memory; `out` receives
/// copies of the updated files when given.
pub fn corpus(manifest: &Manifest, out: Option<&Path>) -> Result<RunSummary> {
    let inputs: Vec<EntryInput> = manifest
        .entries
        .iter()
        .map(|e| {
            let expected = e.expected.clone().unwrap_or_else(|| vec![None; e.targets.len()]);
            Ok(EntryInput {
                mapping_path: e.mapping.clone(),
                example_path: e.example.clone(),
                mapping: load_mapping(&manifest.resolve(&e.mapping))?,
                example: read(&manifest.resolve(&e.example))?,
                targets: e
                    .targets
                    .iter()
                    .zip(expected)
                    .map(|(t, x)| {
                        let x = match x {
                            Some(x) => Some((x.clone(), read(&manifest.resolve(&x))?)),
                            None => None,
                        };
                        Ok((t.clone(), read(&manifest.resolve(t))?, x))
                    })
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;
    let runs: Vec<EntryRun> = inputs.par_iter().map(|i| run_entry(i, true)).collect();
    if let Some(dir) = out {
        for (input, run) in inputs.iter().zip(&runs) {
            for ((name, _, _), text) in input.targets.iter().zip(&run.outputs) {
                if let Some(text) = text {
                    let dest = dir.join(name);
                    if let Some(parent) = dest.parent() {
                        std::fs::create_dir_all(parent)?;
                    }
                    std::fs::write(&dest, text).with_context(|| format!("writing {}", dest.display()))?;
                }
            }
        }
    }
    Ok(RunSummary::new(runs.into_iter().map(|r| r.summary).collect()))
}

pub fn corpus_cmd(manifest: &Path, report: &Path, out: Option<&Path>) -> Result<u8> {
    let manifest = Manifest::load(manifest)?;
    let summary = corpus(&manifest, out)?;
    write_summary(&summary, report)?;
    print!("{}", summary.table());
    Ok(if summary.passed() { 0 } else { 1 })
}

fn write_summary(summary: &RunSummary, path: &Path) -> Result<()> {
    let json = serde_json::to_string_pretty(summary)?;
    std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))
}

pub struct ScoreComparison {
    pub before: f64,
    pub after: f64,
}

impl ScoreComparison {
    pub fn delta(&self) -> f64 {
        self.after - self.before
    }
}

pub fn score(before: &Path, after: &Path, mapping: &Path) -> Result<ScoreComparison> {
    let mapping = load_mapping(mapping)?;
    let b = score_api_usage(&load_unit(before)?, &mapping).with_context(|| before.display().to_string())?;
    let a = score_api_usage(&load_unit(after)?, &mapping).with_context(|| after.display().to_string())?;
    Ok(ScoreComparison { before: b.mean, after: a.mean })
}

pub fn score_cmd(before: &Path, after: &Path, mapping: &Path) -> Result<u8> {
    let s = score(before, after, mapping)?;
    println!("before: {:.4}", s.before);
    println!("after:  {:.4}", s.after);
    println!("delta:  {:+.4}", s.delta());
    Ok(0)
}
