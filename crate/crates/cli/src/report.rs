use std::collections::BTreeMap;

use apievolve_core::script::{Outcome, PhaseMs, SiteOutcome, UpdateReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetStatus {
    Updated,
    Skipped,
    Failed,
}

/// Per-target report, as written by `apply --report` and embedded in run
/// summaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetReport {
    pub target: String,
    pub status: TargetStatus,
    pub outcomes: Vec<SiteOutcome>,
    pub counts: BTreeMap<Outcome, usize>,
    pub diagnostics: Vec<String>,
    pub copied_definitions: Vec<String>,
    pub phase_ms: PhaseMs,
}

impl TargetReport {
    pub fn from_update(r: UpdateReport) -> TargetReport {
        let counts = r.counts();
        let status = if counts.contains_key(&Outcome::Failed) {
            TargetStatus::Failed
        } else if counts.contains_key(&Outcome::Updated) {
            TargetStatus::Updated
        } else {
            TargetStatus::Skipped
        };
        let mut diagnostics = r.diagnostics;
        if r.outcomes.is_empty() {
            diagnostics.push("no matching invocation".into());
        }
        TargetReport {
            target: r.target,
            status,
            outcomes: r.outcomes,
            counts,
            diagnostics,
            copied_definitions: r.copied_definitions,
            phase_ms: r.phase_ms,
        }
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }

    /// Exit code for a single `apply`: 0 when something was updated and
    /// nothing skipped or failed, else 1.
    pub fn exit_code(&self) -> u8 {
        let clean = self.counts.keys().all(|o| *o == Outcome::Updated);
        if self.status == TargetStatus::Updated && clean {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub targets: usize,
    pub updated: usize,
    pub skipped: usize,
    pub failed: usize,
}

impl Counts {
    pub fn of(reports: &[TargetReport]) -> Counts {
        let mut c = Counts { targets: reports.len(), ..Default::default() };
        for r in reports {
            match r.status {
                TargetStatus::Updated => c.updated += 1,
                TargetStatus::Skipped => c.skipped += 1,
                TargetStatus::Failed => c.failed += 1,
            }
        }
        c
    }

    pub fn add(&mut self, other: Counts) {
        self.targets += other.targets;
        self.updated += other.updated;
        self.skipped += other.skipped;
        self.failed += other.failed;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptFailure {
    /// `no-guard`, `external-to-file`, ... for unresolved arguments the reason itself.
    pub reason: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationResult {
    pub target: String,
    pub expected: String,
    pub matched: bool,
}

/// One API (one mapping + example) over its targets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntrySummary {
    pub api: String,
    pub mapping: String,
    pub example: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script_failure: Option<ScriptFailure>,
    pub script_diagnostics: Vec<String>,
    pub counts: Counts,
    pub mean_ms: PhaseMs,
    pub expectations: Vec<ExpectationResult>,
    pub reports: Vec<TargetReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub entries: Vec<EntrySummary>,
    pub totals: Counts,
    pub mean_ms: PhaseMs,
}

impl RunSummary {
    pub fn new(entries: Vec<EntrySummary>) -> RunSummary {
        let mut totals = Counts::default();
        for e in &entries {
            totals.add(e.counts);
        }
        let n = entries.len().max(1) as f64;
        let mean_ms = PhaseMs {
            creation: entries.iter().map(|e| e.mean_ms.creation).sum::<f64>() / n,
            application: entries.iter().map(|e| e.mean_ms.application).sum::<f64>() / n,
        };
        RunSummary { entries, totals, mean_ms }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    /// Plain-text table: one row per API.
    pub fn table(&self) -> String {
        let w = self.entries.iter().map(|e| e.api.len()).max().unwrap_or(0).max(5);
        let mut out = format!(
            "{:<w$} {:>7} {:>7} {:>7} {:>6} {:>11} {:>11}\n",
            "api", "targets", "updated", "skipped", "failed", "create ms", "apply ms"
        );
        for e in &self.entries {
            out.push_str(&format!(
                "{:<w$} {:>7} {:>7} {:>7} {:>6} {:>11.2} {:>11.2}{}\n",
                e.api,
                e.counts.targets,
                e.counts.updated,
                e.counts.skipped,
                e.counts.failed,
                e.mean_ms.creation,
                e.mean_ms.application,
                if e.passed { "" } else { "  FAILED" }
            ));
        }
        out.push_str(&format!(
            "{:<w$} {:>7} {:>7} {:>7} {:>6} {:>11.2} {:>11.2}\n",
            "total",
            self.totals.targets,
            self.totals.updated,
            self.totals.skipped,
            self.totals.failed,
            self.mean_ms.creation,
            self.mean_ms.application
        ));
        out
    }
}

/// Zero every timing field, for comparing runs.
pub fn without_timing(mut summary: RunSummary) -> RunSummary {
    summary.mean_ms = PhaseMs::default();
    for e in &mut summary.entries {
        e.mean_ms = PhaseMs::default();
        for r in &mut e.reports {
            r.phase_ms = PhaseMs::default();
        }
    }
    summary
}
