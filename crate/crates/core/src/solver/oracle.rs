//! Naive reference enumerator used to cross-check the bitmask engine.
//!
//! Fills the leftmost empty cell with every unused value whose copies fit
//! and counts reversal orbits directly on each completed board.

use crate::error::{Error, Result};
use crate::sequence::Problem;

use super::CountReport;

/// Largest `m * n` the oracle accepts.
pub const ORACLE_MAX_POSITIONS: usize = 30;

pub fn brute_force_oracle(problem: &Problem) -> Result<CountReport> {
    if problem.len() > ORACLE_MAX_POSITIONS {
        return Err(Error::Domain(format!(
            "the oracle is limited to m * n <= {ORACLE_MAX_POSITIONS}, got {}",
            problem.len()
        )));
    }
    let timer = super::Stopwatch::start();
    let mut search = Naive {
        m: problem.m(),
        n: problem.n(),
        board: vec![0; problem.len()],
        used: vec![false; problem.n() + 1],
        raw: 0,
        palindromes: 0,
        orbits: 0,
        nodes: 0,
    };
    search.fill(0);

    Ok(CountReport {
        raw_count: search.raw,
        canonical_count: search.orbits,
        palindrome_count: search.palindromes,
        nodes_visited: search.nodes,
        elapsed: timer.seconds(),
    })
}

struct Naive {
    m: usize,
    n: usize,
    board: Vec<u32>,
    used: Vec<bool>,
    raw: u64,
    palindromes: u64,
    orbits: u64,
    nodes: u64,
}

impl Naive {
    /// Cells before `from` are known to be filled.
    fn fill(&mut self, from: usize) {
        let Some(cell) = (from..self.board.len()).find(|&c| self.board[c] == 0) else {
            self.record();
            return;
        };
        let len = self.board.len();
        for k in 1..=self.n {
            if self.used[k] {
                continue;
            }
            self.nodes += 1;
            let step = k + 1;
            let last = cell + (self.m - 1) * step;
            if last >= len || (cell..=last).step_by(step).any(|c| self.board[c] != 0) {
                continue;
            }
            for c in (cell..=last).step_by(step) {
                self.board[c] = k as u32;
            }
            self.used[k] = true;
            self.fill(cell + 1);
            self.used[k] = false;
            for c in (cell..=last).step_by(step) {
                self.board[c] = 0;
            }
        }
    }

    fn record(&mut self) {
        let reversed: Vec<u32> = self.board.iter().rev().copied().collect();
        self.raw += 1;
        if self.board == reversed {
            self.palindromes += 1;
        }
        // Exactly one member of each {s, reverse(s)} is the smaller.
        if self.board <= reversed {
            self.orbits += 1;
        }
    }
}
