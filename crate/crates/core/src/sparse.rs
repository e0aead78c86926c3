//! Run-length encoded unit-width sequences, solved in `O(m)` for `m` runs.
//!
//! Some optimal segment either starts right after a run boundary and ends on
//! one, which the general solver finds on the sequence of whole runs, or it
//! touches a window edge at a boundary-aligned end or start. The second kind
//! is covered by four closed-form candidates per run.

use crate::error::{Error, Result};
use crate::general;
use crate::ineffective::SolveReport;
use crate::sequence::{Density, NumberPair, ProblemInstance, Segment, Solution, MAX_MAGNITUDE};
use crate::trace::{Counters, NoObserver};

/// One run: `value` repeated up to the cumulative 1-based index `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub value: i64,
    pub end: usize,
}

/// Unit-width sequence given as runs with strictly increasing ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthSequence {
    runs: Vec<Run>,
}

impl RunLengthSequence {
    /// Validates `0 < n_1 < n_2 < … < n_m`. Adjacent runs may repeat a value.
    pub fn new(runs: Vec<Run>) -> Result<Self> {
        if runs.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut prev = 0;
        for (k, run) in runs.iter().enumerate() {
            if run.end <= prev {
                return Err(Error::parse(
                    k + 1,
                    format!("run end {} does not exceed previous end {prev}", run.end),
                ));
            }
            if run.value.abs() > MAX_MAGNITUDE || run.end as u64 > MAX_MAGNITUDE as u64 {
                return Err(Error::OutOfRange { index: k + 1 });
            }
            prev = run.end;
        }
        Ok(Self { runs })
    }

    /// Compresses explicit values, merging equal neighbours.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        let mut runs: Vec<Run> = Vec::new();
        for (k, &v) in values.iter().enumerate() {
            match runs.last_mut() {
                Some(last) if last.value == v => last.end = k + 1,
                _ => runs.push(Run {
                    value: v,
                    end: k + 1,
                }),
            }
        }
        Self::new(runs)
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// Expanded length `n = n_m`.
    pub fn len(&self) -> usize {
        self.runs.last().map_or(0, |r| r.end)
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Per-index values `a_1, …, a_n`.
    pub fn values(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len());
        let mut start = 0;
        for run in &self.runs {
            out.extend(std::iter::repeat_n(run.value, run.end - start));
            start = run.end;
        }
        out
    }

    /// The expanded unit-width sequence.
    pub fn expand(&self) -> Vec<NumberPair> {
        self.values().into_iter().map(NumberPair::unit).collect()
    }
}

/// Cumulative value sums at run boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunPrefix {
    /// `n_0 = 0, n_1, …, n_m`.
    ends: Vec<usize>,
    /// `Â[0] = 0, Â[k] = Σ_{t <= k} n'_t · a'_t`.
    sums: Vec<i64>,
    /// `a'_k` at position `k` (position 0 unused).
    values: Vec<i64>,
}

impl RunPrefix {
    pub fn new(rls: &RunLengthSequence) -> Self {
        let m = rls.runs.len();
        let mut ends = Vec::with_capacity(m + 1);
        let mut sums = Vec::with_capacity(m + 1);
        let mut values = Vec::with_capacity(m + 1);
        ends.push(0);
        sums.push(0);
        values.push(0);
        for run in &rls.runs {
            let len = (run.end - ends.last().unwrap()) as i64;
            sums.push(sums.last().unwrap() + len * run.value);
            ends.push(run.end);
            values.push(run.value);
        }
        Self { ends, sums, values }
    }

    pub fn runs(&self) -> usize {
        self.ends.len() - 1
    }

    pub fn n(&self) -> usize {
        *self.ends.last().unwrap()
    }

    /// `n_k`.
    pub fn end(&self, k: usize) -> usize {
        self.ends[k]
    }

    /// `A(pos)` given a run `k` with `n_{k-1} <= pos <= n_k`.
    #[inline]
    pub fn prefix_in(&self, pos: usize, k: usize) -> i64 {
        debug_assert!(self.ends[k - 1] <= pos && pos <= self.ends[k]);
        self.sums[k - 1] + (pos - self.ends[k - 1]) as i64 * self.values[k]
    }

    /// Run containing element `pos` (the first run when `pos == 0`), by
    /// binary search.
    pub fn run_of(&self, pos: usize) -> usize {
        assert!(pos <= self.n(), "position {pos} beyond n = {}", self.n());
        self.ends.partition_point(|&e| e < pos).max(1)
    }

    /// `A(pos)` for any `0 <= pos <= n`.
    pub fn prefix(&self, pos: usize) -> i64 {
        self.prefix_in(pos, self.run_of(pos))
    }

    /// Density of the expanded segment `[i, j]`.
    pub fn density(&self, i: usize, j: usize) -> Density {
        assert!(
            1 <= i && i <= j && j <= self.n(),
            "segment ({i}, {j}) out of range"
        );
        Density::new(self.prefix(j) - self.prefix(i - 1), (j - i + 1) as i64)
    }
}

/// Density of the expanded segment `[i, j]`; `hint` gives the runs holding
/// positions `i − 1` and `j` when the caller already knows them.
pub fn rl_density(rp: &RunPrefix, i: usize, j: usize, hint: Option<(usize, usize)>) -> Density {
    match hint {
        Some((ki, kj)) => Density::new(
            rp.prefix_in(j, kj) - rp.prefix_in(i - 1, ki),
            (j - i + 1) as i64,
        ),
        None => rp.density(i, j),
    }
}

/// Forward-only search for the run holding a position.
#[derive(Debug)]
struct RunCursor {
    k: usize,
}

impl RunCursor {
    fn new() -> Self {
        Self { k: 1 }
    }

    fn seek(&mut self, rp: &RunPrefix, pos: usize, counters: &mut Counters) -> usize {
        while rp.ends[self.k] < pos {
            self.k += 1;
            counters.cursor_moves += 1;
        }
        self.k
    }
}

/// Solves the expanded instance `(rls, w_min, w_max)` in `O(m)`.
pub fn solve_sparse(rls: &RunLengthSequence, w_min: usize, w_max: usize) -> Result<SolveReport> {
    if w_min == 0 || w_min > w_max {
        return Err(Error::InvalidBounds {
            w_min: w_min as i64,
            w_max: w_max as i64,
        });
    }
    let n = rls.len();
    if n < w_min {
        return Err(Error::NoFeasibleSegment);
    }
    let rp = RunPrefix::new(rls);
    let m = rp.runs();
    let mut counters = Counters::default();
    let mut best: Option<Solution> = None;

    // whole runs as weighted elements
    let whole = ProblemInstance {
        seq: (1..=m)
            .map(|k| {
                let len = (rp.ends[k] - rp.ends[k - 1]) as i64;
                NumberPair::new(len * rp.values[k], len)
            })
            .collect(),
        w_min: w_min as i64,
        w_max: w_max as i64,
    };
    match general::solve(&whole, &mut NoObserver) {
        Ok(report) => {
            counters += report.counters;
            let Segment { i, j } = report.best.segment;
            let seg = Segment::new(rp.ends[i - 1] + 1, rp.ends[j]);
            let d = rl_density(&rp, seg.i, seg.j, Some((i, j)));
            debug_assert_eq!(d, report.best.density);
            Solution::keep_best(&mut best, Solution::new(seg, d));
        }
        Err(Error::NoFeasibleSegment) => {}
        Err(e) => return Err(e),
    }

    let mut at_ell = RunCursor::new();
    let mut at_r = RunCursor::new();
    let mut at_short = RunCursor::new();
    let mut at_long = RunCursor::new();
    let mut consider = |seg: Segment, d: Density, counters: &mut Counters| {
        counters.extra_candidates += 1;
        Solution::keep_best(&mut best, Solution::new(seg, d));
    };
    for k in 1..=m {
        let end = rp.ends[k];
        if end >= w_min {
            // (ℓ_{n_k}, n_k) and (r_{n_k}, n_k)
            let ell = end.saturating_sub(w_max) + 1;
            let ke = at_ell.seek(&rp, ell - 1, &mut counters);
            consider(
                Segment::new(ell, end),
                rl_density(&rp, ell, end, Some((ke, k))),
                &mut counters,
            );
            let r = end - w_min + 1;
            let kr = at_r.seek(&rp, r - 1, &mut counters);
            consider(
                Segment::new(r, end),
                rl_density(&rp, r, end, Some((kr, k))),
                &mut counters,
            );
        }
        let start = rp.ends[k - 1];
        if start + w_min <= n {
            // (n_{k-1} + 1, n_{k-1} + w_min) and (n_{k-1} + 1, min(n, n_{k-1} + w_max))
            let short = start + w_min;
            let ks = at_short.seek(&rp, short, &mut counters);
            consider(
                Segment::new(start + 1, short),
                rl_density(&rp, start + 1, short, Some((k, ks))),
                &mut counters,
            );
            let long = n.min(start + w_max);
            let kl = at_long.seek(&rp, long, &mut counters);
            consider(
                Segment::new(start + 1, long),
                rl_density(&rp, start + 1, long, Some((k, kl))),
                &mut counters,
            );
        }
    }

    let best = best.ok_or(Error::NoFeasibleSegment)?;
    Ok(SolveReport { best, counters })
}
