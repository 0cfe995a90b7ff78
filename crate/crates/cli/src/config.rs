use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flat run configuration. Every field has a default; a config file may
/// set any subset, and command-line flags override it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Largest sector for S-graded suites; each suite has its own default.
    pub max_s: Option<u32>,
    /// Largest word length for `words-check`.
    pub max_n: u32,
    /// Largest Hermite frame sector assembled densely.
    pub sector_cap: usize,
    /// Largest `S` for which `Q_S` is assembled.
    pub qs_cap: u32,
    /// Largest number of words enumerated for one multiset.
    pub word_cap: u64,
    pub tol_norm: f64,
    pub tol_flow: f64,
    pub tol_quotient_442: f64,
    pub tol_quotient_661: f64,
    pub min_perturbation_margin: f64,
    pub tol_equivalence: f64,
    pub tol_funk_hecke: f64,
    pub tol_weighted: f64,
    pub tol_parseval: f64,
    pub tol_spectrum: f64,
    pub seed: u64,
    /// Record wall time per check. Off gives byte-identical reports.
    pub timing: bool,
    /// Suites run by `report-all`; empty means all.
    pub suites: Vec<String>,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_s: None,
            max_n: 8,
            sector_cap: strichartz_core::hermite_frame::DEFAULT_SECTOR_CAP,
            qs_cap: strichartz_core::laguerre_frame::DEFAULT_SECTOR_CAP,
            word_cap: strichartz_core::words::DEFAULT_WORD_CAP as u64,
            tol_norm: 1e-8,
            tol_flow: 1e-6,
            tol_quotient_442: 1e-6,
            tol_quotient_661: 1e-5,
            min_perturbation_margin: 1e-3,
            tol_equivalence: 1e-5,
            tol_funk_hecke: 1e-10,
            tol_weighted: 1e-5,
            tol_parseval: 1e-10,
            tol_spectrum: 1e-10,
            seed: 2024,
            timing: true,
            suites: Vec::new(),
            format: Format::Json,
            out: None,
            jobs: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }

    pub fn validate(&self) -> Result<(), String> {
        let tols = [
            ("tol_norm", self.tol_norm),
            ("tol_flow", self.tol_flow),
            ("tol_quotient_442", self.tol_quotient_442),
            ("tol_quotient_661", self.tol_quotient_661),
            ("min_perturbation_margin", self.min_perturbation_margin),
            ("tol_equivalence", self.tol_equivalence),
            ("tol_funk_hecke", self.tol_funk_hecke),
            ("tol_weighted", self.tol_weighted),
            ("tol_parseval", self.tol_parseval),
            ("tol_spectrum", self.tol_spectrum),
        ];
        for (name, v) in tols {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        if self.sector_cap == 0 || self.qs_cap == 0 || self.word_cap == 0 {
            return Err("caps must be positive".into());
        }
        for s in &self.suites {
            if !crate::suites::SUITES.contains(&s.as_str()) {
                return Err(format!("unknown suite {s:?}"));
            }
        }
        Ok(())
    }

    pub fn max_s_or(&self, default: u32) -> u32 {
        self.max_s.unwrap_or(default)
    }
}
