use std::ops::ControlFlow;

use crate::sequence::Problem;

/// Every way to drop the `m` copies of `k` onto the board: the 0-based
/// first position and the mask of all `m` positions.
#[derive(Clone, Debug)]
pub(crate) struct Engine {
    m: usize,
    n: usize,
    len: usize,
    placements: Vec<Vec<(usize, u128)>>,
}

impl Engine {
    pub(crate) fn new(problem: &Problem) -> Self {
        let (m, n, len) = (problem.m(), problem.n(), problem.len());
        let mut placements = vec![Vec::new(); n + 1];
        for (k, slot) in placements.iter_mut().enumerate().skip(1) {
            let span = (m - 1) * (k + 1);
            if span >= len {
                continue;
            }
            for first in 0..len - span {
                let mask = (0..m).fold(0u128, |acc, j| acc | 1u128 << (first + j * (k + 1)));
                slot.push((first, mask));
            }
        }
        Engine { m, n, len, placements }
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn candidates(&self, k: usize) -> &[(usize, u128)] {
        &self.placements[k]
    }

    pub(crate) fn root(&self) -> SearchState {
        SearchState {
            occupancy: 0,
            board: vec![0; self.len],
            next_value: self.n,
        }
    }

    pub(crate) fn place(&self, state: &mut SearchState, k: usize, first: usize, mask: u128) {
        debug_assert_eq!(state.occupancy & mask, 0);
        debug_assert_eq!(state.next_value, k);
        state.occupancy |= mask;
        for j in 0..self.m {
            state.board[first + j * (k + 1)] = k as u32;
        }
        state.next_value -= 1;
    }

    pub(crate) fn unplace(&self, state: &mut SearchState, k: usize, first: usize, mask: u128) {
        state.occupancy &= !mask;
        for j in 0..self.m {
            state.board[first + j * (k + 1)] = 0;
        }
        state.next_value += 1;
    }

    /// Depth-first search below `state`, values descending, first copies
    /// tried at ascending positions. `visit` sees every completed board.
    /// `nodes` counts attempted placements.
    pub(crate) fn descend<F>(&self, state: &mut SearchState, nodes: &mut u64, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let k = state.next_value;
        if k == 0 {
            return visit(&state.board);
        }
        for &(first, mask) in &self.placements[k] {
            *nodes += 1;
            if state.occupancy & mask != 0 {
                continue;
            }
            self.place(state, k, first, mask);
            let flow = self.descend(state, nodes, visit);
            self.unplace(state, k, first, mask);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Partial board during the search. Owned by one worker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchState {
    /// Bit `i` set iff position `i` (0-based) is filled.
    pub occupancy: u128,
    /// Placed values, 0 for empty cells.
    pub board: Vec<u32>,
    /// Value to be placed next; 0 once the board is complete.
    pub next_value: usize,
}

impl SearchState {
    /// Checks the occupancy/board agreement invariant.
    pub fn is_consistent(&self) -> bool {
        self.board
            .iter()
            .enumerate()
            .all(|(i, &v)| (self.occupancy >> i & 1 == 1) == (v != 0))
    }
}
