//! Exact enumeration of the multiple permutation problem.
//!
//! An instance `(m, n)` asks for every arrangement of the multiset
//! `{1^m, 2^m, ..., n^m}` in which consecutive copies of each value `k` are
//! separated by exactly `k` other terms. For `m = 2` these are the classical
//! Langford pairings. Solutions come in reversal pairs; `p(m, n)` counts one
//! representative per pair, chosen by [`is_canonical`].
//!
//! The crate is organised as follows:
//! - [`sequence`]: problem and sequence types, reversal and the canonical key.
//! - [`verifier`]: exhaustive violation reporting for candidate sequences.
//! - [`solver`]: bitmask backtracking, job splitting, and a naive oracle.
//! - [`existence`]: closed-form necessary conditions, bounds and estimates.
//! - [`analysis`]: per-solution structures (congruence classes, first
//!   appearance order, span coverage) and batch statistics.
//! - [`io`] and [`report`]: the text solution format and the JSON run report.

pub mod analysis;
pub mod error;
pub mod existence;
pub mod io;
pub mod report;
pub mod sequence;
pub mod solver;
pub mod verifier;

pub use error::{Error, Result};
pub use sequence::{
    canonical_key, first_occurrences, is_canonical, reverse, CanonicalKey, FirstOccurrences,
    Problem, Sequence, MAX_POSITIONS,
};
pub use solver::{
    brute_force_oracle, count, enumerate, split_jobs, CountReport, EnumerateOptions, JobPrefix,
    SearchOptions, Strategy,
};
pub use verifier::{verify, Violation, ViolationKind};
