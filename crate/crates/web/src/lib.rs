//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string. Failures come back as
//! `{"error": "..."}` so the page never has to catch exceptions, and the
//! functions run unchanged in native tests.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use multiperm::analysis::{analyze, AnalysisReport};
use multiperm::existence::{asymptotic_estimate, necessary_condition, ExistenceVerdict};
use multiperm::{count, enumerate, is_canonical, verify, EnumerateOptions, Problem, Sequence, Violation};

/// Largest board the demo will search; bigger ones freeze the tab.
pub const MAX_DEMO_POSITIONS: usize = 26;

/// Most solutions returned alongside a count.
pub const MAX_LISTED: u32 = 500;

fn to_json<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(value) => serde_json::to_string(&value).unwrap_or_else(|e| json!({ "error": e.to_string() }).to_string()),
        Err(error) => json!({ "error": error }).to_string(),
    }
}

fn demo_problem(m: u32, n: u32) -> Result<Problem, String> {
    let problem = Problem::new(m as usize, n as usize).map_err(|e| e.to_string())?;
    if problem.len() > MAX_DEMO_POSITIONS {
        return Err(format!(
            "{problem} has {} positions; the browser demo stops at {MAX_DEMO_POSITIONS}, use the command-line tool",
            problem.len()
        ));
    }
    Ok(problem)
}

#[derive(Serialize)]
struct Solutions {
    m: u32,
    n: u32,
    canonical_count: u64,
    raw_count: u64,
    palindrome_count: u64,
    nodes_visited: u64,
    verdict: ExistenceVerdict,
    solutions: Vec<Sequence>,
}

/// Counts `(m, n)` and lists up to `limit` canonical solutions in
/// lexicographic order.
#[wasm_bindgen]
pub fn solve(m: u32, n: u32, limit: u32) -> String {
    to_json((|| {
        let problem = demo_problem(m, n)?;
        let report = count(&problem, &Default::default()).map_err(|e| e.to_string())?;
        let mut solutions = Vec::new();
        let options = EnumerateOptions {
            limit: Some(u64::from(limit.min(MAX_LISTED))),
            sort: true,
            ..Default::default()
        };
        enumerate(&problem, &options, |s| {
            solutions.push(s.clone());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
        Ok(Solutions {
            m,
            n,
            canonical_count: report.canonical_count,
            raw_count: report.raw_count,
            palindrome_count: report.palindrome_count,
            nodes_visited: report.nodes_visited,
            verdict: necessary_condition(u64::from(m), u64::from(n)).map_err(|e| e.to_string())?,
            solutions,
        })
    })())
}

#[derive(Serialize)]
struct Inspection {
    valid: bool,
    violations: Vec<Violation>,
    canonical: Option<bool>,
    analysis: Option<AnalysisReport>,
}

/// Verifies a space-separated sequence against `(m, n)` and, when it is a
/// solution, returns its derived structures.
#[wasm_bindgen]
pub fn inspect(m: u32, n: u32, text: &str) -> String {
    to_json((|| {
        let problem = Problem::new(m as usize, n as usize).map_err(|e| e.to_string())?;
        let seq: Sequence = text.parse().map_err(|e: multiperm::error::Error| e.to_string())?;
        let violations = verify(&problem, &seq);
        if !violations.is_empty() {
            return Ok(Inspection { valid: false, violations, canonical: None, analysis: None });
        }
        let canonical = is_canonical(&seq, &problem).map_err(|e| e.to_string())?;
        let analysis = analyze(&problem, &seq).map_err(|e| e.to_string())?;
        Ok(Inspection { valid: true, violations, canonical: Some(canonical), analysis: Some(analysis) })
    })())
}

#[derive(Serialize)]
struct TableRow {
    n: u32,
    verdict: ExistenceVerdict,
    estimate: Option<f64>,
}

/// Existence verdicts for `n = 1..=n_max`.
#[wasm_bindgen]
pub fn existence_table(m: u32, n_max: u32) -> String {
    to_json(
        (1..=n_max.min(1000))
            .map(|n| {
                let verdict = necessary_condition(u64::from(m), u64::from(n)).map_err(|e| e.to_string())?;
                let estimate = asymptotic_estimate(u64::from(m), u64::from(n)).ok();
                Ok(TableRow { n, verdict, estimate })
            })
            .collect::<Result<Vec<_>, String>>(),
    )
}
