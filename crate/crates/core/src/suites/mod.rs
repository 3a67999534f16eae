//! Seeded verification suites. Each suite returns per-case results plus its
//! machine-readable artifacts, so a run is reproducible byte for byte.

mod algebraic;
mod props;
mod spec;
mod theorem1;

use std::collections::BTreeMap;

use serde::Serialize;

pub use algebraic::{ar_exact_suite, decompose_suite};
pub use props::{axioms_suite, barcode_suite, endolength_suite, schanuel_suite};
pub use spec::{spec_embedding_suite, spectrum_suite};
pub use theorem1::{hom_dim_matrix, theorem1_suite, Theorem1Data};

use crate::coeffalg::AlgebraError;
use crate::cohfun::CohfunError;
use crate::exactlin::Field;
use crate::perfcx::PerfcxError;
use crate::spectrum::SpectrumError;

pub const SUITES: [&str; 9] = ["theorem1", "axioms", "decompose", "ar-exact", "schanuel", "spectrum", "spec-embedding", "barcode", "endolength"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    /// Largest string length for window-based suites.
    pub r_max: usize,
    /// Shift range for window-based suites.
    pub n_range: (i32, i32),
    /// Overrides the number of random cases.
    pub cases: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 1, r_max: 3, n_range: (-3, 3), cases: None }
    }
}

impl RunConfig {
    pub fn cases_or(&self, n: usize) -> usize {
        self.cases.unwrap_or(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

impl CaseResult {
    pub fn new(id: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CaseResult { id: id.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    /// File name → contents.
    pub artifacts: BTreeMap<String, String>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), cases: Vec::new(), artifacts: BTreeMap::new() }
    }

    pub fn push(&mut self, c: CaseResult) {
        self.cases.push(c);
    }

    pub fn passed(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.pass).count()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} cases, {} failed)",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases.len(),
            self.failures()
        )
    }

    /// One line per case, then the summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            s.push_str(&format!("{} {} {}\n", if c.pass { "ok  " } else { "FAIL" }, c.id, c.detail));
        }
        s.push_str(&self.summary());
        s.push('\n');
        s
    }

    /// Case table as CSV, written next to the other artifacts.
    pub fn cases_csv(&self) -> Result<String, SuiteError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for c in &self.cases {
            w.serialize(c).map_err(|e| SuiteError::Format(e.to_string()))?;
        }
        String::from_utf8(w.into_inner().map_err(|e| SuiteError::Format(e.to_string()))?).map_err(|e| SuiteError::Format(e.to_string()))
    }

    /// All artifacts including `<suite>_cases.csv`.
    pub fn all_artifacts(&self) -> Result<BTreeMap<String, String>, SuiteError> {
        let mut out = self.artifacts.clone();
        out.insert(format!("{}_cases.csv", self.suite), self.cases_csv()?);
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("format: {0}")]
    Format(String),
    #[error(transparent)]
    Perfcx(#[from] PerfcxError),
    #[error(transparent)]
    Cohfun(#[from] CohfunError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Runs a suite by name over `field`.
pub fn run_suite<F: Field>(name: &str, field: &F, cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    match name {
        "theorem1" => theorem1_suite(field, cfg),
        "axioms" => axioms_suite(field, cfg),
        "decompose" => decompose_suite(field, cfg),
        "ar-exact" => ar_exact_suite(field, cfg),
        "schanuel" => schanuel_suite(field, cfg),
        "spectrum" => spectrum_suite(field, cfg),
        "spec-embedding" => spec_embedding_suite(field, cfg),
        "barcode" => barcode_suite(field, cfg),
        "endolength" => endolength_suite(field, cfg),
        other => Err(SuiteError::UnknownSuite(other.to_string())),
    }
}

pub(crate) fn json<T: Serialize>(v: &T) -> Result<String, SuiteError> {
    serde_json::to_string_pretty(v).map_err(|e| SuiteError::Format(e.to_string())).map(|s| s + "\n")
}
