//! Machine-readable run report.
//!
//! The JSON form is an object with exactly these fields: `m`, `n`,
//! `raw_count`, `canonical_count`, `palindrome_count`, `nodes_visited`,
//! `elapsed_seconds`, `verdict`, `estimate`, `ratio`, `version`. Values not
//! computed by a run are `null`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::existence::{asymptotic_estimate, estimate_ratio, necessary_condition, ExistenceVerdict};
use crate::sequence::Problem;
use crate::solver::CountReport;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub m: usize,
    pub n: usize,
    pub raw_count: Option<u64>,
    pub canonical_count: Option<u64>,
    pub palindrome_count: Option<u64>,
    pub nodes_visited: Option<u64>,
    pub elapsed_seconds: Option<f64>,
    pub verdict: ExistenceVerdict,
    /// Conjectured asymptotic size; `m` in `{2, 3}` only.
    pub estimate: Option<f64>,
    /// `canonical_count / estimate` when both are known.
    pub ratio: Option<f64>,
    pub version: String,
}

impl RunReport {
    /// A report with the closed-form fields filled and no counts.
    pub fn new(problem: &Problem) -> Self {
        Self::closed_form(problem.m(), problem.n()).expect("a constructed Problem has m >= 2 and n >= 1")
    }

    /// Like [`RunReport::new`] but for any `m >= 2`, `n >= 1`, including
    /// sizes the solver does not support.
    pub fn closed_form(m: usize, n: usize) -> Result<Self> {
        let verdict = necessary_condition(m as u64, n as u64)?;
        Ok(RunReport {
            m,
            n,
            raw_count: None,
            canonical_count: None,
            palindrome_count: None,
            nodes_visited: None,
            elapsed_seconds: None,
            verdict,
            estimate: asymptotic_estimate(m as u64, n as u64).ok(),
            ratio: None,
            version: VERSION.to_string(),
        })
    }

    pub fn with_counts(mut self, counts: &CountReport) -> Self {
        self.raw_count = Some(counts.raw_count);
        self.canonical_count = Some(counts.canonical_count);
        self.palindrome_count = Some(counts.palindrome_count);
        self.nodes_visited = Some(counts.nodes_visited);
        self.elapsed_seconds = Some(counts.elapsed);
        self.ratio = self
            .estimate
            .and_then(|e| estimate_ratio(counts.canonical_count, e).ok());
        self
    }
}
