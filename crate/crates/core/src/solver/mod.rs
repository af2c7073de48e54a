//! Exhaustive backtracking over `(m, n)` instances.
//!
//! Values are placed from `n` down to `1`. For each value every feasible
//! first position is tried in ascending order; the remaining `m - 1` copies
//! are forced, so a placement is a single `u128` mask and feasibility is one
//! intersection with the occupancy mask.
//!
//! The full (raw) solution set is always walked. `p(m, n)` is derived from
//! it either as `(raw + palindromes) / 2` or by filtering with
//! [`is_canonical`](crate::is_canonical); both must agree.
//!
//! Parallel runs fix the placements of the top values ([`split_jobs`]) and
//! search each prefix independently. Results are aggregated by addition in
//! prefix order, so counts and emission order do not depend on the worker
//! count or the split depth.

mod engine;
mod oracle;

use std::io;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{compare_with_reverse, is_palindrome, Problem, Sequence};

use engine::Engine;
pub use engine::SearchState;
pub use oracle::{brute_force_oracle, ORACLE_MAX_POSITIONS};

/// How `canonical_count` is obtained from the raw walk.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// `(raw_count + palindrome_count) / 2`.
    #[default]
    RawHalving,
    /// Count the solutions accepted by `is_canonical`.
    CanonicalFilter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; must be at least 1.
    pub jobs: usize,
    /// Number of top values fixed per job. `None` picks 0 for a single
    /// worker and `min(n, 3)` otherwise.
    pub split_depth: Option<usize>,
    pub strategy: Strategy,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 1,
            split_depth: None,
            strategy: Strategy::RawHalving,
        }
    }
}

impl SearchOptions {
    fn depth_for(&self, problem: &Problem) -> Result<usize> {
        if self.jobs == 0 {
            return Err(Error::Domain("worker count must be at least 1".into()));
        }
        let depth = match self.split_depth {
            Some(d) => d,
            None if self.jobs == 1 => 0,
            None => problem.n().min(3),
        };
        if depth > problem.n() {
            return Err(Error::Domain(format!(
                "split depth {depth} exceeds n = {}",
                problem.n()
            )));
        }
        Ok(depth)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub search: SearchOptions,
    /// Stop after this many sequences.
    pub limit: Option<u64>,
    /// Emit in ascending lexicographic order (buffers everything first).
    pub sort: bool,
}

/// Result of a counting run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    /// All solutions, both members of each reversal pair.
    pub raw_count: u64,
    /// `p(m, n)`.
    pub canonical_count: u64,
    pub palindrome_count: u64,
    pub nodes_visited: u64,
    /// Wall time in seconds.
    pub elapsed: f64,
}

impl CountReport {
    /// Whether the two runs found the same solution counts.
    pub fn same_counts(&self, other: &CountReport) -> bool {
        (self.raw_count, self.canonical_count, self.palindrome_count)
            == (other.raw_count, other.canonical_count, other.palindrome_count)
    }

    /// Broken reversal-pairing identities, empty when consistent.
    ///
    /// For `m` in `{2, 3}` and `n > 3` a palindromic solution cannot exist,
    /// so a nonzero palindrome count there is reported as well.
    pub fn consistency_issues(&self, problem: &Problem) -> Vec<String> {
        let mut issues = Vec::new();
        if self.raw_count + self.palindrome_count != 2 * self.canonical_count {
            issues.push(format!(
                "raw_count {} != 2 * canonical_count {} - palindrome_count {}",
                self.raw_count, self.canonical_count, self.palindrome_count
            ));
        }
        if (2..=3).contains(&problem.m()) && problem.n() > 3 && self.palindrome_count != 0 {
            issues.push(format!(
                "{} palindromic solutions found for {problem}, where none can exist",
                self.palindrome_count
            ));
        }
        issues
    }
}

/// The top of the search tree fixed for one job.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JobPrefix {
    /// `(value, 1-based first position)` for values `n, n-1, ...`.
    pub placements: Vec<(u32, usize)>,
    pub depth: usize,
}

/// Partitions the raw solution set by the placements of the top `depth`
/// values. Prefixes come out in depth-first order, so concatenating their
/// results reproduces a single-threaded run.
pub fn split_jobs(problem: &Problem, depth: usize) -> Result<Vec<JobPrefix>> {
    if depth > problem.n() {
        return Err(Error::Domain(format!(
            "split depth {depth} exceeds n = {}",
            problem.n()
        )));
    }
    let engine = Engine::new(problem);
    Ok(split(&engine, depth).0)
}

fn split(engine: &Engine, depth: usize) -> (Vec<JobPrefix>, u64) {
    fn walk(
        engine: &Engine,
        state: &mut SearchState,
        depth: usize,
        path: &mut Vec<(u32, usize)>,
        out: &mut Vec<JobPrefix>,
        nodes: &mut u64,
    ) {
        if path.len() == depth {
            out.push(JobPrefix {
                placements: path.clone(),
                depth,
            });
            return;
        }
        let k = state.next_value;
        for &(first, mask) in engine.candidates(k) {
            *nodes += 1;
            if state.occupancy & mask != 0 {
                continue;
            }
            engine.place(state, k, first, mask);
            path.push((k as u32, first + 1));
            walk(engine, state, depth, path, out, nodes);
            path.pop();
            engine.unplace(state, k, first, mask);
        }
    }

    let mut out = Vec::new();
    let mut nodes = 0;
    walk(engine, &mut engine.root(), depth, &mut Vec::new(), &mut out, &mut nodes);
    (out, nodes)
}

fn prefix_state(engine: &Engine, prefix: &JobPrefix) -> SearchState {
    let mut state = engine.root();
    for &(k, first) in &prefix.placements {
        let k = k as usize;
        let &(_, mask) = engine
            .candidates(k)
            .iter()
            .find(|c| c.0 + 1 == first)
            .expect("prefix placement comes from split_jobs");
        engine.place(&mut state, k, first - 1, mask);
    }
    state
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    raw: u64,
    canonical: u64,
    palindromes: u64,
    nodes: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;

    fn add(self, o: Tally) -> Tally {
        Tally {
            raw: self.raw + o.raw,
            canonical: self.canonical + o.canonical,
            palindromes: self.palindromes + o.palindromes,
            nodes: self.nodes + o.nodes,
        }
    }
}

fn count_job(engine: &Engine, prefix: &JobPrefix, strategy: Strategy) -> Tally {
    let mut state = prefix_state(engine, prefix);
    let mut tally = Tally::default();
    let n = engine.n();
    let _ = engine.descend(&mut state, &mut tally.nodes, &mut |board| {
        tally.raw += 1;
        if is_palindrome(board) {
            tally.palindromes += 1;
        }
        if strategy == Strategy::CanonicalFilter
            && compare_with_reverse(board, n) != Some(std::cmp::Ordering::Greater)
        {
            tally.canonical += 1;
        }
        ControlFlow::Continue(())
    });
    tally
}

/// Runs `job` over every prefix, preserving prefix order in the output.
fn run_jobs<T, F>(prefixes: &[JobPrefix], workers: usize, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&JobPrefix) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    if workers > 1 && prefixes.len() > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Unsupported(format!("could not start worker pool: {e}")))?;
        return Ok(pool.install(|| prefixes.par_iter().map(&job).collect()));
    }
    let _ = workers;
    Ok(prefixes.iter().map(job).collect())
}

/// Counts all solutions of `problem`.
pub fn count(problem: &Problem, options: &SearchOptions) -> Result<CountReport> {
    let timer = Stopwatch::start();
    let depth = options.depth_for(problem)?;
    let engine = Engine::new(problem);
    let (prefixes, split_nodes) = split(&engine, depth);
    let total = run_jobs(&prefixes, options.jobs, |prefix| {
        count_job(&engine, prefix, options.strategy)
    })?
    .into_iter()
    .fold(Tally { nodes: split_nodes, ..Tally::default() }, |a, b| a + b);

    let canonical_count = match options.strategy {
        Strategy::RawHalving => (total.raw + total.palindromes) / 2,
        Strategy::CanonicalFilter => total.canonical,
    };
    Ok(CountReport {
        raw_count: total.raw,
        canonical_count,
        palindrome_count: total.palindromes,
        nodes_visited: total.nodes,
        elapsed: timer.seconds(),
    })
}

/// Streams every canonical solution of `problem` into `sink` and returns
/// how many were emitted.
///
/// Without `sort` the order is the depth-first order of the search, which
/// is the same for every worker count. A single unsorted worker streams
/// without buffering; otherwise results are collected first.
pub fn enumerate<F>(problem: &Problem, options: &EnumerateOptions, mut sink: F) -> Result<u64>
where
    F: FnMut(&Sequence) -> io::Result<()>,
{
    let depth = options.search.depth_for(problem)?;
    let engine = Engine::new(problem);
    let n = problem.n();
    let limit = options.limit.unwrap_or(u64::MAX);
    if limit == 0 {
        return Ok(0);
    }

    if options.search.jobs == 1 && !options.sort {
        let mut state = engine.root();
        let mut emitted = 0u64;
        let mut failure = None;
        let mut nodes = 0;
        let _ = engine.descend(&mut state, &mut nodes, &mut |board| {
            if compare_with_reverse(board, n) == Some(std::cmp::Ordering::Greater) {
                return ControlFlow::Continue(());
            }
            if let Err(e) = sink(&Sequence::from(board)) {
                failure = Some(e);
                return ControlFlow::Break(());
            }
            emitted += 1;
            if emitted >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        return match failure {
            Some(e) => Err(e.into()),
            None => Ok(emitted),
        };
    }

    // Each job keeps at most `limit` results when the overall order is the
    // job order; sorting needs everything.
    let per_job_cap = if options.sort { u64::MAX } else { limit };
    let (prefixes, _) = split(&engine, depth);
    let batches = run_jobs(&prefixes, options.search.jobs, |prefix| {
        let mut state = prefix_state(&engine, prefix);
        let mut found: Vec<Sequence> = Vec::new();
        let mut nodes = 0;
        let _ = engine.descend(&mut state, &mut nodes, &mut |board| {
            if compare_with_reverse(board, n) != Some(std::cmp::Ordering::Greater) {
                found.push(Sequence::from(board));
                if found.len() as u64 >= per_job_cap {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        found
    })?;
    let mut all: Vec<Sequence> = batches.into_iter().flatten().collect();
    if options.sort {
        all.sort_unstable();
    }
    let mut emitted = 0;
    for seq in all.iter().take(limit.try_into().unwrap_or(usize::MAX)) {
        sink(seq)?;
        emitted += 1;
    }
    Ok(emitted)
}

/// Wall-clock timer; reads zero where no clock is available.
pub(crate) struct Stopwatch {
    #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
    start: std::time::Instant,
}

impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch {
            #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
            start: std::time::Instant::now(),
        }
    }

    pub(crate) fn seconds(&self) -> f64 {
        #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
        return self.start.elapsed().as_secs_f64();
        #[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
        return 0.0;
    }
}
