//! Corpus manifests: a JSON list of `{mapping, example, targets[], expected?[]}`
//! with paths relative to the manifest file.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub mapping: String,
    pub example: String,
    pub targets: Vec<String>,
    /// Expected outputs, aligned with `targets`; `null` skips a comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Vec<Option<String>>>,
}

#[derive(Debug, Clone)]
pub struct Manifest {
    pub base: PathBuf,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Manifest> {
        let text = crate::read(path)?;
        let entries: Vec<ManifestEntry> = serde_json::from_str(&text).with_context(|| format!("manifest {}", path.display()))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let manifest = Manifest { base, entries };
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn resolve(&self, rel: &str) -> PathBuf {
        self.base.join(rel)
    }

    fn validate(&self) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            if let Some(expected) = &e.expected {
                if expected.len() != e.targets.len() {
                    bail!("entry {i}: {} expected outputs for {} targets", expected.len(), e.targets.len());
                }
            }
            let expected = e.expected.iter().flatten().flatten();
            for rel in [&e.mapping, &e.example].into_iter().chain(&e.targets).chain(expected) {
                if !self.resolve(rel).is_file() {
                    bail!("entry {i}: missing file {rel}");
                }
            }
        }
        Ok(())
    }
}
