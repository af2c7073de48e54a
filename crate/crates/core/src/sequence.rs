//! Problem and sequence types, reversal, and the canonical representative
//! rule shared by every other module.
//!
//! Positions are 1-based wherever they leave this crate (keys, tables,
//! reports); slices are indexed from 0 internally.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported `m * n`: occupancy fits in a single `u128`.
pub const MAX_POSITIONS: usize = 128;

/// An instance `(m, n)`: `m` copies of each value in `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Problem {
    m: usize,
    n: usize,
}

impl Problem {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("multiplicity m must be at least 2, got {m}")));
        }
        if n < 1 {
            return Err(Error::Domain(format!("largest value n must be at least 1, got {n}")));
        }
        match m.checked_mul(n) {
            Some(len) if len <= MAX_POSITIONS => Ok(Problem { m, n }),
            _ => Err(Error::Unsupported(format!(
                "(m, n) = ({m}, {n}) needs {} positions; at most {MAX_POSITIONS} are supported",
                m.saturating_mul(n)
            ))),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sequence length `m * n`; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.m * self.n
    }

    /// Checks that `values` has the right length and only values in `1..=n`.
    pub fn check_shape(&self, values: &[u32]) -> Result<()> {
        if values.len() != self.len() {
            return Err(Error::Structural(format!(
                "expected {} terms for {self}, got {}",
                self.len(),
                values.len()
            )));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, &v)| v == 0 || v as usize > self.n)
        {
            return Err(Error::Structural(format!(
                "value {v} at position {} is outside 1..={}",
                i + 1,
                self.n
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// An arrangement of values, candidate or verified.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sequence(Vec<u32>);

impl Sequence {
    pub fn new(values: Vec<u32>) -> Self {
        Sequence(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    /// The sequence read back to front.
    pub fn reversed(&self) -> Sequence {
        Sequence(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.0)
    }
}

impl Deref for Sequence {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Sequence {
    fn from(values: Vec<u32>) -> Self {
        Sequence(values)
    }
}

impl From<&[u32]> for Sequence {
    fn from(values: &[u32]) -> Self {
        Sequence(values.to_vec())
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Sequence {
    type Err = Error;

    /// Parses whitespace-separated positive integers.
    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Structural(format!("`{tok}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Sequence)
    }
}

/// Reverses a well-formed sequence of `problem`.
pub fn reverse(problem: &Problem, seq: &Sequence) -> Result<Sequence> {
    problem.check_shape(seq)?;
    Ok(seq.reversed())
}

/// Sort key selecting the representative of a reversal pair.
///
/// Smaller is preferred: first the earlier first occurrence of `n`, then the
/// greater initial element, then the lexicographically smaller sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalKey {
    /// 1-based index of the first `n`.
    pub first_n_index: usize,
    /// The first element, negated.
    pub neg_initial: i64,
    pub lex_tiebreak: Vec<u32>,
}

pub fn canonical_key(seq: &[u32], n: usize) -> Result<CanonicalKey> {
    let first_n = seq
        .iter()
        .position(|&v| v as usize == n)
        .ok_or_else(|| Error::Domain(format!("value {n} does not occur in the sequence")))?;
    Ok(CanonicalKey {
        first_n_index: first_n + 1,
        neg_initial: -i64::from(seq[0]),
        lex_tiebreak: seq.to_vec(),
    })
}

/// Whether `seq` is the representative of its reversal pair. Palindromes
/// are their own representative.
///
/// The caller is responsible for `seq` being a solution of `problem`.
pub fn is_canonical(seq: &[u32], problem: &Problem) -> Result<bool> {
    compare_with_reverse(seq, problem.n())
        .map(|ord| ord != Ordering::Greater)
        .ok_or_else(|| Error::Domain(format!("value {} does not occur in the sequence", problem.n())))
}

/// Compares `canonical_key(seq)` against `canonical_key(reverse(seq))`
/// without allocating. `None` if `n` is absent.
pub(crate) fn compare_with_reverse(seq: &[u32], n: usize) -> Option<Ordering> {
    let n = u32::try_from(n).ok()?;
    let first = seq.iter().position(|&v| v == n)?;
    let last = seq.iter().rposition(|&v| v == n)?;
    let first_in_reverse = seq.len() - 1 - last;
    let tail = seq[seq.len() - 1];
    Some(
        first
            .cmp(&first_in_reverse)
            .then_with(|| tail.cmp(&seq[0]))
            .then_with(|| seq.iter().cmp(seq.iter().rev())),
    )
}

pub(crate) fn is_palindrome(seq: &[u32]) -> bool {
    seq.iter().eq(seq.iter().rev())
}

/// 1-based index of the first occurrence of each value `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FirstOccurrences(Vec<usize>);

impl FirstOccurrences {
    /// First index of `k`. Panics if `k` is not in `1..=n`.
    pub fn get(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    /// `(k, first index of k)` for `k = 1..=n`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().map(|(i, &pos)| (i + 1, pos))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

pub fn first_occurrences(seq: &[u32], n: usize) -> Result<FirstOccurrences> {
    let mut theta = vec![0usize; n];
    for (i, &v) in seq.iter().enumerate() {
        let v = v as usize;
        if (1..=n).contains(&v) && theta[v - 1] == 0 {
            theta[v - 1] = i + 1;
        }
    }
    if let Some(k) = theta.iter().position(|&t| t == 0) {
        return Err(Error::Domain(format!("value {} does not occur in the sequence", k + 1)));
    }
    Ok(FirstOccurrences(theta))
}
