//! Feasible start windows `[ℓ_j, r_j]` and chunk splitting.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::sequence::{check_bounds, NumberPair, PrefixSums};

/// Per-end-index feasible start windows.
///
/// Arrays are indexed by `j` in `0..=n`. For `j < j0` the window is empty
/// and `r[j] == 0`. A window is empty whenever `ell[j] > r[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleBounds {
    pub j0: usize,
    pub ell: Vec<usize>,
    pub r: Vec<usize>,
}

impl FeasibleBounds {
    pub fn n(&self) -> usize {
        self.ell.len() - 1
    }

    pub fn is_empty_at(&self, j: usize) -> bool {
        self.ell[j] > self.r[j]
    }

    /// `Some((ℓ_j, r_j))` when the window of `j` is nonempty.
    pub fn window(&self, j: usize) -> Option<(usize, usize)> {
        (!self.is_empty_at(j)).then(|| (self.ell[j], self.r[j]))
    }
}

/// Two monotone cursors producing `ℓ_j` and `r_j` one `j` at a time.
///
/// Neither cursor ever moves backward, so feeding `j = 1, 2, …, n` costs
/// `O(n)` in total.
#[derive(Debug, Clone)]
pub struct BoundsCursor {
    w_min: i64,
    w_max: i64,
    ell: usize,
    r: usize,
    moves: u64,
}

impl BoundsCursor {
    pub fn new(w_min: i64, w_max: i64) -> Self {
        Self {
            w_min,
            w_max,
            ell: 1,
            r: 0,
            moves: 0,
        }
    }

    /// Returns `(ℓ_j, r_j)` for the next end index `j`.
    ///
    /// `ℓ_j` is the smallest `i` in `[1, j + 1]` with `w(i, j) <= w_max`;
    /// `r_j` is the largest `i` in `[1, j]` with `w(i, j) >= w_min`, or 0.
    pub fn advance(&mut self, ps: &PrefixSums, j: usize) -> (usize, usize) {
        while self.ell <= j && ps.width(self.ell, j) > self.w_max {
            self.ell += 1;
            self.moves += 1;
        }
        while self.r < j && ps.width(self.r + 1, j) >= self.w_min {
            self.r += 1;
            self.moves += 1;
        }
        (self.ell, self.r)
    }

    /// Smallest start index any later window can contain.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn moves(&self) -> u64 {
        self.moves
    }
}

/// Computes `j0` and every window `[ℓ_j, r_j]` by a two-pointer sweep.
pub fn compute_bounds(ps: &PrefixSums, w_min: i64, w_max: i64) -> Result<FeasibleBounds> {
    check_bounds(w_min, w_max)?;
    let n = ps.len();
    if n == 0 || ps.w(n) < w_min {
        return Err(Error::NoFeasibleSegment);
    }
    let mut cursor = BoundsCursor::new(w_min, w_max);
    let mut ell = vec![1; n + 1];
    let mut r = vec![0; n + 1];
    let mut j0 = 0;
    for j in 1..=n {
        let (lo, hi) = cursor.advance(ps, j);
        ell[j] = lo;
        r[j] = hi;
        if j0 == 0 && hi > 0 {
            j0 = j;
        }
    }
    Ok(FeasibleBounds { j0, ell, r })
}

/// Maximal 1-based ranges of consecutive elements with `w <= w_max`.
///
/// An element wider than `w_max` cannot lie in any feasible segment, so it
/// separates chunks and belongs to none.
pub fn split_chunks(seq: &[NumberPair], w_max: i64) -> Vec<RangeInclusive<usize>> {
    let mut chunks = Vec::new();
    let mut start = None;
    for (k, pair) in seq.iter().enumerate() {
        let idx = k + 1;
        match (pair.w <= w_max, start) {
            (true, None) => start = Some(idx),
            (false, Some(s)) => {
                chunks.push(s..=idx - 1);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        chunks.push(s..=seq.len());
    }
    chunks
}
