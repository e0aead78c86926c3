//! Variant window problem: the best segment `(x, y)` with starts in `[ℓ, r]`,
//! ends in `[y0, y1]` and width in `[w_min, w_max]`, where `r` is fixed and
//! `w(r, y0) >= w_min`.
//!
//! Because the right end of the start range is fixed, every query
//! `φ(x, r − 1)` can be served from a table built once in `O(r − ℓ + 1)`.

use crate::bounds::FeasibleBounds;
use crate::sequence::{PrefixSums, Segment};
use crate::trace::{CandidateEvent, Counters, Source, VariantCall};

/// Table with `Ψ[i] = φ(i, r)` for every `i ∈ [ell, r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiTable {
    ell: usize,
    r: usize,
    psi: Vec<usize>,
}

impl PsiTable {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `Ψ[i]`. Panics outside `[ell, r]`.
    #[inline]
    pub fn get(&self, i: usize) -> usize {
        assert!(
            self.ell <= i && i <= self.r,
            "Ψ[{i}] outside [{}, {}]",
            self.ell,
            self.r
        );
        self.psi[i - self.ell]
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }
}

/// Builds Ψ over `[ell, r]` by a backward sweep. An empty range (`r < ell`)
/// yields an empty table.
///
/// For each `s` the walk follows `t ← Ψ[t + 1]` while that does not raise
/// `d(s, t)`; the total walk length over the sweep is `O(r − ell + 1)`.
pub fn init(ps: &PrefixSums, ell: usize, r: usize, counters: &mut Counters) -> PsiTable {
    if r < ell {
        return PsiTable {
            ell,
            r,
            psi: Vec::new(),
        };
    }
    let mut psi = vec![0; r - ell + 1];
    psi[r - ell] = r;
    for s in (ell..r).rev() {
        let mut t = s;
        while t < r {
            let jump = psi[t + 1 - ell];
            if ps.density(s, t) >= ps.density(s, jump) {
                t = jump;
                counters.init_steps += 1;
            } else {
                break;
            }
        }
        psi[s - ell] = t;
    }
    PsiTable { ell, r, psi }
}

/// Largest maximizer of `d(x, y)` over `x ∈ [ell, r]`, given `psi` built by
/// `init(·, r − 1)`.
pub fn vbest(
    psi: &PsiTable,
    ps: &PrefixSums,
    ell: usize,
    r: usize,
    y: usize,
    counters: &mut Counters,
) -> usize {
    let mut x = ell;
    while x < r {
        let end = psi.get(x);
        if ps.density(x, end) <= ps.density(x, y) {
            x = end + 1;
            counters.vbest_steps += 1;
        } else {
            break;
        }
    }
    x
}

/// A variant call that can be suspended when its end range runs past the
/// data ingested so far.
#[derive(Debug, Clone)]
pub struct VariantTask {
    r: usize,
    y0: usize,
    ell: usize,
    psi: PsiTable,
    next_y: usize,
    x_prev: usize,
    last_y: Option<usize>,
    done: bool,
}

impl VariantTask {
    /// Starts a task for `variant(r, y0)` with `ell = ℓ_{y0}`. Builds Ψ over
    /// `[ell, r − 1]`, which only needs indices already ingested.
    pub fn new(ps: &PrefixSums, ell: usize, r: usize, y0: usize, counters: &mut Counters) -> Self {
        counters.variant_calls += 1;
        let psi = init(ps, ell, r - 1, counters);
        Self {
            r,
            y0,
            ell,
            psi,
            next_y: y0,
            x_prev: ell,
            last_y: None,
            done: false,
        }
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    /// Smallest index this task can still read.
    pub fn low_water(&self) -> usize {
        self.x_prev
    }

    /// Processes end indices up to `available`, stopping for good at the
    /// first `y` with `w(r, y) > w_max`. `ell_of(y)` must return `ℓ_y`.
    pub fn resume(
        &mut self,
        ps: &PrefixSums,
        available: usize,
        w_max: i64,
        ell_of: impl Fn(usize) -> usize,
        counters: &mut Counters,
        mut emit: impl FnMut(CandidateEvent),
    ) {
        while !self.done && self.next_y <= available {
            let y = self.next_y;
            if ps.width(self.r, y) > w_max {
                self.done = true;
                break;
            }
            let start = self.x_prev.max(ell_of(y));
            let x = vbest(&self.psi, ps, start, self.r, y, counters);
            counters.variant_emissions += 1;
            emit(CandidateEvent {
                segment: Segment::new(x, y),
                density: ps.density(x, y),
                source: Source::Variant,
            });
            self.x_prev = x;
            self.last_y = Some(y);
            self.next_y += 1;
        }
    }

    /// Marks the end of input; no further end indices exist.
    pub fn close(&mut self) {
        self.done = true;
    }

    /// Call record; `y1` is the last end index handled so far.
    pub fn call(&self) -> VariantCall {
        VariantCall {
            r: self.r,
            y0: self.y0,
            ell: self.ell,
            y1: self.last_y.unwrap_or(self.y0),
        }
    }
}

/// Runs `variant(r, y0)` to completion on a fully known sequence, emitting
/// `(x_y, y)` for every `y ∈ [y0, y1]`.
///
/// Panics if `w(r, y0) < w_min`, which callers must rule out.
#[allow(clippy::too_many_arguments)]
pub fn variant_solve(
    ps: &PrefixSums,
    bounds: &FeasibleBounds,
    r: usize,
    y0: usize,
    w_min: i64,
    w_max: i64,
    counters: &mut Counters,
    emit: impl FnMut(CandidateEvent),
) -> VariantCall {
    assert!(
        ps.width(r, y0) >= w_min,
        "variant({r}, {y0}) called with w(r, y0) < w_min"
    );
    let mut task = VariantTask::new(ps, bounds.ell[y0], r, y0, counters);
    task.resume(ps, ps.len(), w_max, |y| bounds.ell[y], counters, emit);
    task.close();
    task.call()
}
