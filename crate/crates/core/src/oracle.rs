//! Brute-force reference implementations.
//!
//! Nothing here depends on the window bounds or the deque machinery; these
//! functions are the ground truth the fast solvers are checked against.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::sequence::{build_prefix_sums, PrefixSums, ProblemInstance, Segment, Solution};

/// Best feasible segment by exhaustive enumeration.
///
/// Ties go to the largest `j`, then the largest `i`.
pub fn brute_force_solve(inst: &ProblemInstance) -> Result<Solution> {
    let ps = build_prefix_sums(&inst.seq)?;
    let n = ps.len();
    brute_force_in(&ps, 1..=n, 1..=n, inst.w_min, inst.w_max).ok_or(Error::NoFeasibleSegment)
}

/// Best segment `(x, y)` with `x ∈ starts`, `y ∈ ends`, `x <= y` and
/// `w_min <= w(x, y) <= w_max`, under the same tie rule as
/// [`brute_force_solve`].
pub fn brute_force_in(
    ps: &PrefixSums,
    starts: RangeInclusive<usize>,
    ends: RangeInclusive<usize>,
    w_min: i64,
    w_max: i64,
) -> Option<Solution> {
    let mut best: Option<Solution> = None;
    for y in ends {
        let lo = *starts.start();
        let hi = (*starts.end()).min(y);
        // walk starts from y downward; widths only grow
        for x in (lo..=hi).rev() {
            let width = ps.width(x, y);
            if width > w_max {
                break;
            }
            if width >= w_min {
                Solution::keep_best(
                    &mut best,
                    Solution::new(Segment::new(x, y), ps.density(x, y)),
                );
            }
        }
    }
    best
}

/// Largest `z ∈ [x, y]` minimizing `d(x, z)`.
pub fn brute_force_phi(ps: &PrefixSums, x: usize, y: usize) -> usize {
    assert!(x <= y, "phi({x}, {y}) needs x <= y");
    let mut arg = x;
    let mut min = ps.density(x, x);
    for z in x + 1..=y {
        let d = ps.density(x, z);
        if d <= min {
            min = d;
            arg = z;
        }
    }
    arg
}

/// Largest `i ∈ [ell, r]` maximizing `d(i, j)`.
pub fn brute_force_best(ps: &PrefixSums, ell: usize, r: usize, j: usize) -> usize {
    assert!(
        ell <= r && r <= j,
        "best({ell}, {r}, {j}) needs ell <= r <= j"
    );
    let mut arg = ell;
    let mut max = ps.density(ell, j);
    for i in ell + 1..=r {
        let d = ps.density(i, j);
        if d >= max {
            max = d;
            arg = i;
        }
    }
    arg
}

/// Number of `(i, j)` pairs [`brute_force_solve`] inspects, computed in
/// `O(n)` so callers can refuse oversized inputs up front.
pub fn brute_force_cost(inst: &ProblemInstance) -> u64 {
    let mut cost = 0u64;
    let mut start = 0usize;
    let mut width = 0i64;
    for (j, pair) in inst.seq.iter().enumerate() {
        width += pair.w;
        while width > inst.w_max && start <= j {
            width -= inst.seq[start].w;
            start += 1;
        }
        // the inner loop also touches the first start that overflows
        cost += (j + 1 - start) as u64 + 1;
    }
    cost
}
