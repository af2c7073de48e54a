//! Solution checking with exhaustive, position-level diagnostics.

use std::fmt;

use serde::Serialize;

use crate::sequence::Problem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ViolationKind {
    WrongLength,
    ValueOutOfRange,
    WrongMultiplicity,
    BadSpacing,
}

/// One reason a candidate is not a solution.
///
/// `BadSpacing` always carries two positions `i < j` holding the same value
/// whose distance differs from `value + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub value: Option<u32>,
    /// 1-based positions involved.
    pub positions: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)
    }
}

/// Returns every violation of `values` against `problem`; empty means valid.
///
/// Values whose multiplicity is wrong are not spacing-checked.
pub fn verify(problem: &Problem, values: &[u32]) -> Vec<Violation> {
    let (m, n) = (problem.m(), problem.n());
    let mut out = Vec::new();

    if values.len() != problem.len() {
        out.push(Violation {
            kind: ViolationKind::WrongLength,
            value: None,
            positions: Vec::new(),
            detail: format!("expected {} terms, found {}", problem.len(), values.len()),
        });
    }

    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, &v) in values.iter().enumerate() {
        let pos = i + 1;
        if v == 0 || v as usize > n {
            out.push(Violation {
                kind: ViolationKind::ValueOutOfRange,
                value: Some(v),
                positions: vec![pos],
                detail: format!("value {v} at position {pos} is outside 1..={n}"),
            });
        } else {
            occurrences[v as usize].push(pos);
        }
    }

    for (k, occ) in occurrences.iter().enumerate().skip(1) {
        if occ.len() != m {
            out.push(Violation {
                kind: ViolationKind::WrongMultiplicity,
                value: Some(k as u32),
                positions: occ.clone(),
                detail: format!("value {k} occurs {} times, expected {m}", occ.len()),
            });
        }
    }

    for (k, occ) in occurrences.iter().enumerate().skip(1) {
        if occ.len() != m {
            continue;
        }
        for pair in occ.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            if j - i != k + 1 {
                out.push(Violation {
                    kind: ViolationKind::BadSpacing,
                    value: Some(k as u32),
                    positions: vec![i, j],
                    detail: format!(
                        "copies of {k} at positions {i} and {j} have {} terms between them, expected {k}",
                        j - i - 1
                    ),
                });
            }
        }
    }
    out
}
