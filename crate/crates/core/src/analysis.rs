//! Derived structures of a single solution and batch statistics over many.
//!
//! - The congruential partition splits a solution into `m` classes by
//!   position modulo `m`. Copies of `k` sit at `theta_k + j(k+1)`, so they
//!   spread over the classes according to `gcd(k + 1, m)`.
//! - The first-appearance order lists the values by first occurrence; it
//!   is always a permutation of `1..=n`.
//! - For `m = 2`, `mu_i` counts the values `k` whose closed span
//!   `[theta_k, theta_k + k + 1]` covers position `i`. Span lengths are
//!   `k + 2`, so the total weight is `(n^2 + 5n) / 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{first_occurrences, FirstOccurrences, Problem, Sequence};
use crate::verifier::verify;

fn require_solution(problem: &Problem, seq: &[u32]) -> Result<()> {
    match verify(problem, seq).first() {
        None => Ok(()),
        Some(v) => Err(Error::Domain(format!("not a solution of {problem}: {v}"))),
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruentialPartition {
    /// Class `j` holds the terms at 1-based positions `i` with
    /// `i ≡ j + 1 (mod m)`, in position order.
    pub classes: Vec<Vec<u32>>,
    /// `per_class_value_counts[j][k - 1]`: copies of `k` in class `j`.
    pub per_class_value_counts: Vec<Vec<usize>>,
}

impl CongruentialPartition {
    /// Re-interleaves the classes into the original sequence.
    pub fn interleave(&self) -> Sequence {
        let m = self.classes.len();
        let len: usize = self.classes.iter().map(Vec::len).sum();
        Sequence::new((0..len).map(|i| self.classes[i % m][i / m]).collect())
    }
}

pub fn congruential_partition(problem: &Problem, seq: &[u32]) -> Result<CongruentialPartition> {
    require_solution(problem, seq)?;
    let (m, n) = (problem.m(), problem.n());
    let mut classes = vec![Vec::with_capacity(n); m];
    let mut counts = vec![vec![0usize; n]; m];
    for (i, &v) in seq.iter().enumerate() {
        classes[i % m].push(v);
        counts[i % m][v as usize - 1] += 1;
    }
    Ok(CongruentialPartition {
        classes,
        per_class_value_counts: counts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueCheck {
    pub ok: bool,
    /// One line per value whose distribution is off.
    pub failures: Vec<String>,
}

/// Checks how the copies of each value spread over the classes.
///
/// With `g = gcd(k + 1, m)`, the copies of `k` must fill exactly `m / g`
/// classes with `g` copies each. For prime `m` this says: one copy per
/// class when `k + 1` is not a multiple of `m`, otherwise all `m` copies in
/// a single class.
pub fn residue_distribution_check(part: &CongruentialPartition, problem: &Problem) -> ResidueCheck {
    let (m, n) = (problem.m(), problem.n());
    let mut failures = Vec::new();
    if part.per_class_value_counts.len() != m {
        failures.push(format!(
            "expected {m} classes, found {}",
            part.per_class_value_counts.len()
        ));
        return ResidueCheck { ok: false, failures };
    }
    for k in 1..=n {
        let g = gcd(k + 1, m);
        let counts: Vec<usize> = part
            .per_class_value_counts
            .iter()
            .map(|c| c.get(k - 1).copied().unwrap_or(0))
            .collect();
        let filled = counts.iter().filter(|&&c| c > 0).count();
        if filled != m / g || counts.iter().any(|&c| c != 0 && c != g) {
            failures.push(format!(
                "value {k}: per-class counts {counts:?}, expected {} classes with {g} each",
                m / g
            ));
        }
    }
    ResidueCheck {
        ok: failures.is_empty(),
        failures,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiSequence {
    /// Distinct values in order of first appearance.
    pub order: Vec<u32>,
}

impl PhiSequence {
    pub fn is_permutation(&self, n: usize) -> bool {
        let mut seen = vec![false; n + 1];
        self.order.len() == n
            && self.order.iter().all(|&v| {
                let v = v as usize;
                (1..=n).contains(&v) && !std::mem::replace(&mut seen[v], true)
            })
    }
}

pub fn phi_sequence(seq: &[u32], n: usize) -> Result<PhiSequence> {
    let theta = first_occurrences(seq, n)?;
    let mut order: Vec<(usize, u32)> = theta.iter().map(|(k, pos)| (pos, k as u32)).collect();
    order.sort_unstable();
    Ok(PhiSequence {
        order: order.into_iter().map(|(_, k)| k).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuSequence {
    /// `mu[i - 1]` for positions `i = 1..=2n`.
    pub mu: Vec<u32>,
    pub weight: u64,
    pub peak_value: u32,
    /// Smallest 1-based index attaining `peak_value`.
    pub peak_index: usize,
    /// Every 1-based index attaining `peak_value`.
    pub peak_indices: Vec<usize>,
}

impl MuSequence {
    fn from_values(mu: Vec<u32>) -> Self {
        let weight = mu.iter().map(|&x| u64::from(x)).sum();
        let peak_value = mu.iter().copied().max().unwrap_or(0);
        let peak_indices: Vec<usize> = mu
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == peak_value)
            .map(|(i, _)| i + 1)
            .collect();
        MuSequence {
            weight,
            peak_value,
            peak_index: peak_indices.first().copied().unwrap_or(0),
            peak_indices,
            mu,
        }
    }
}

/// Span coverage counts of a `(2, n)` solution.
pub fn mu_sequence(problem: &Problem, seq: &[u32]) -> Result<MuSequence> {
    if problem.m() != 2 {
        return Err(Error::Unsupported(format!(
            "the mu-sequence is defined for m = 2 only, got m = {}",
            problem.m()
        )));
    }
    require_solution(problem, seq)?;
    let theta = first_occurrences(seq, problem.n())?;
    Ok(MuSequence::from_values(span_coverage(&theta, seq.len())))
}

fn span_coverage(theta: &FirstOccurrences, len: usize) -> Vec<u32> {
    // Difference array over 0-based positions.
    let mut delta = vec![0i64; len + 1];
    for (k, first) in theta.iter() {
        let last = first + k + 1;
        delta[first - 1] += 1;
        delta[last.min(len)] -= 1;
    }
    delta[..len]
        .iter()
        .scan(0i64, |acc, d| {
            *acc += d;
            Some(*acc as u32)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    /// `weight == (n^2 + 5n) / 2`; holds for every valid solution.
    pub weight_ok: bool,
    /// The maximum equals `floor((n + 3) / 2)` and is attained at some
    /// index `<= n`.
    pub peak_value_ok: bool,
    /// `mu_1 < mu_2 <= ... <= mu_i >= ... >= mu_{2n-1} > mu_{2n}`.
    pub unimodal_ok: bool,
    pub counterexample_detail: Option<String>,
}

impl ConjectureVerdict {
    pub fn all_ok(&self) -> bool {
        self.weight_ok && self.peak_value_ok && self.unimodal_ok
    }
}

pub fn expected_mu_weight(n: usize) -> u64 {
    ((n * n + 5 * n) / 2) as u64
}

pub fn conjecture_check(mu: &MuSequence, n: usize) -> ConjectureVerdict {
    let mut notes = Vec::new();

    let expected_weight = expected_mu_weight(n);
    let weight_ok = mu.weight == expected_weight;
    if !weight_ok {
        notes.push(format!("weight {} != {expected_weight}", mu.weight));
    }

    let expected_peak = ((n + 3) / 2) as u32;
    let peak_value_ok = mu.peak_value == expected_peak && mu.peak_indices.iter().any(|&i| i <= n);
    if !peak_value_ok {
        notes.push(format!(
            "peak {} at indices {:?}, expected {expected_peak} at some index <= {n}",
            mu.peak_value, mu.peak_indices
        ));
    }

    let unimodal_ok = is_unimodal(&mu.mu);
    if !unimodal_ok {
        notes.push(format!("not unimodal with strict ends: {:?}", mu.mu));
    }

    ConjectureVerdict {
        weight_ok,
        peak_value_ok,
        unimodal_ok,
        counterexample_detail: (!notes.is_empty()).then(|| notes.join("; ")),
    }
}

/// Weakly rises to one peak position and weakly falls after it, with a
/// strict first rise and a strict last fall.
fn is_unimodal(mu: &[u32]) -> bool {
    let len = mu.len();
    if len < 2 || mu[0] >= mu[1] || mu[len - 2] <= mu[len - 1] {
        return false;
    }
    let top = mu.windows(2).take_while(|w| w[0] <= w[1]).count();
    mu[top..].windows(2).all(|w| w[0] >= w[1])
}

/// Everything derived from one solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    /// Source line, when the solution came from a file.
    pub line: Option<usize>,
    pub sequence: Sequence,
    pub first_occurrences: FirstOccurrences,
    pub phi: PhiSequence,
    pub phi_is_permutation: bool,
    pub partition: CongruentialPartition,
    pub residue: ResidueCheck,
    /// Present for `m = 2` only.
    pub mu: Option<MuSequence>,
    pub conjecture: Option<ConjectureVerdict>,
}

pub fn analyze(problem: &Problem, seq: &Sequence) -> Result<AnalysisReport> {
    let partition = congruential_partition(problem, seq)?;
    let residue = residue_distribution_check(&partition, problem);
    let theta = first_occurrences(seq, problem.n())?;
    let phi = phi_sequence(seq, problem.n())?;
    let (mu, conjecture) = if problem.m() == 2 {
        let mu = mu_sequence(problem, seq)?;
        let verdict = conjecture_check(&mu, problem.n());
        (Some(mu), Some(verdict))
    } else {
        (None, None)
    };
    Ok(AnalysisReport {
        line: None,
        sequence: seq.clone(),
        first_occurrences: theta,
        phi_is_permutation: phi.is_permutation(problem.n()),
        phi,
        partition,
        residue,
        mu,
        conjecture,
    })
}

/// Aggregate over a batch of solutions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub analyzed: u64,
    /// Must stay zero.
    pub weight_failures: u64,
    /// Must stay zero.
    pub residue_failures: u64,
    /// Must stay zero.
    pub phi_failures: u64,
    /// Conjecture tallies, `m = 2` only.
    pub peak_ok: u64,
    pub unimodal_ok: u64,
    pub conjecture_ok: u64,
    /// True when the batch is for `m != 2` and no mu-sequences were built.
    pub mu_skipped: bool,
    pub reports: Vec<AnalysisReport>,
}

impl BatchReport {
    /// No identity failed.
    pub fn identities_hold(&self) -> bool {
        self.weight_failures == 0 && self.residue_failures == 0 && self.phi_failures == 0
    }
}

/// Analyzes `(line, solution)` pairs. The first invalid solution aborts the
/// batch with its line number.
pub fn analyze_batch<I>(problem: &Problem, solutions: I) -> Result<BatchReport>
where
    I: IntoIterator<Item = (usize, Sequence)>,
{
    let mut batch = BatchReport {
        mu_skipped: problem.m() != 2,
        ..BatchReport::default()
    };
    for (line, seq) in solutions {
        let mut report = analyze(problem, &seq).map_err(|e| Error::Domain(format!("line {line}: {e}")))?;
        report.line = Some(line);
        batch.analyzed += 1;
        if !report.residue.ok {
            batch.residue_failures += 1;
        }
        if !report.phi_is_permutation {
            batch.phi_failures += 1;
        }
        if let Some(v) = &report.conjecture {
            batch.weight_failures += u64::from(!v.weight_ok);
            batch.peak_ok += u64::from(v.peak_value_ok);
            batch.unimodal_ok += u64::from(v.unimodal_ok);
            batch.conjecture_ok += u64::from(v.all_ok());
        }
        batch.reports.push(report);
    }
    Ok(batch)
}
