//! Linear-time solver for arbitrary width bounds.
//!
//! Runs the deque loop of the ineffective case, but before each `lbest`
//! moves the head past indices below `ℓ_j`. Starts skipped that way can
//! still belong to the optimum; whenever the skip jumps past the previous
//! answer `i_{j-1}`, a variant call over starts `[ℓ_j, Φ[p]]` recovers them.
//! Successive variant calls touch disjoint index ranges, so the total work
//! stays `O(n)`.

use crate::bounds::{compute_bounds, split_chunks, FeasibleBounds};
use crate::error::{Error, Result};
use crate::ineffective::{PhiDeque, SolveReport};
use crate::sequence::{build_prefix_sums, PrefixSums, ProblemInstance, Segment, Solution};
use crate::trace::{CandidateEvent, Counters, Observer, Source, VariantCall};
use crate::variant::variant_solve;

/// Solves `inst` over every chunk and returns the preferred optimum.
///
/// Candidate events and variant calls go to `observer` in global 1-based
/// indices.
pub fn solve<O: Observer + ?Sized>(
    inst: &ProblemInstance,
    observer: &mut O,
) -> Result<SolveReport> {
    let mut counters = Counters::default();
    let mut best: Option<Solution> = None;
    for chunk in split_chunks(&inst.seq, inst.w_max) {
        let offset = chunk.start() - 1;
        let ps = build_prefix_sums(&inst.seq[offset..*chunk.end()])?;
        let bounds = match compute_bounds(&ps, inst.w_min, inst.w_max) {
            Ok(b) => b,
            Err(Error::NoFeasibleSegment) => continue,
            Err(e) => return Err(e),
        };
        let found = solve_chunk(
            &ps,
            &bounds,
            inst.w_min,
            inst.w_max,
            offset,
            &mut counters,
            observer,
        );
        if let Some(s) = found {
            Solution::keep_best(&mut best, s);
        }
    }
    let best = best.ok_or(Error::NoFeasibleSegment)?;
    Ok(SolveReport { best, counters })
}

/// The main loop on one chunk (no element wider than `w_max`).
pub fn solve_chunk<O: Observer + ?Sized>(
    ps: &PrefixSums,
    bounds: &FeasibleBounds,
    w_min: i64,
    w_max: i64,
    offset: usize,
    counters: &mut Counters,
    observer: &mut O,
) -> Option<Solution> {
    let n = ps.len();
    let mut best: Option<Solution> = None;
    let mut deque = PhiDeque::new();
    let mut last_i = 1;
    let mut emit = |event: CandidateEvent, observer: &mut O| {
        let event = CandidateEvent {
            segment: event.segment.shifted(offset),
            ..event
        };
        observer.on_event(&event);
        Solution::keep_best(&mut best, Solution::new(event.segment, event.density));
    };
    for j in bounds.j0..=n {
        counters.steps += 1;
        deque.update(ps, bounds.r[j - 1] + 1, bounds.r[j], counters);
        observer.after_update(j, &deque);
        let Some((ell, _)) = bounds.window(j) else {
            // no feasible start ends here; i_j stays i_{j-1}
            continue;
        };
        deque.skip_below(ell, counters);
        let head = deque.head();
        if last_i < head {
            assert!(
                ps.width(head, j) >= w_min,
                "variant precondition violated at j = {j}: w({head}, {j}) < w_min"
            );
            let call = variant_solve(ps, bounds, head, j, w_min, w_max, counters, |e| {
                emit(e, observer)
            });
            observer.on_variant(&shift_call(call, offset));
        }
        let i = deque.lbest(ps, j, counters);
        emit(
            CandidateEvent {
                segment: Segment::new(i, j),
                density: ps.density(i, j),
                source: Source::Deque,
            },
            observer,
        );
        last_i = i;
    }
    best
}

pub(crate) fn shift_call(call: VariantCall, offset: usize) -> VariantCall {
    VariantCall {
        r: call.r + offset,
        y0: call.y0 + offset,
        ell: call.ell + offset,
        y1: call.y1 + offset,
    }
}
