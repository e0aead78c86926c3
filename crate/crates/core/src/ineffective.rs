//! The Φ deque and the linear-time solver for an ineffective upper bound
//! (`w_max >= w(1, n)`), where only `w_min` constrains a segment.
//!
//! After `update(j)` the live window `Φ[p..=q]` is the chain
//! `x, φ(x, r_j − 1) + 1, φ(φ(x, r_j − 1) + 1, r_j − 1) + 1, …, r_j`
//! with `x = Φ[p]`. `lbest(j)` walks that chain from the head, which is
//! exactly the candidate sequence the reference `best` scan would visit.

use crate::bounds::compute_bounds;
use crate::error::{Error, Result};
use crate::sequence::{build_prefix_sums, PrefixSums, ProblemInstance, Segment, Solution};
use crate::trace::{CandidateEvent, Counters, Observer, Source};

/// Array Φ with live window `[p, q]`.
///
/// Slots are addressed by logical position, which never changes. Slots below
/// `p` are dead and may be released with [`PhiDeque::compact`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiDeque {
    phi: Vec<usize>,
    dropped: usize,
    p: usize,
    q: usize,
}

impl Default for PhiDeque {
    fn default() -> Self {
        Self::new()
    }
}

impl PhiDeque {
    /// Empty deque, `p = 1` and `q = 0`.
    pub fn new() -> Self {
        Self {
            phi: vec![0],
            dropped: 0,
            p: 1,
            q: 0,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn is_empty(&self) -> bool {
        self.q < self.p
    }

    /// `Φ[t]` for a live or dead-but-retained slot.
    #[inline]
    pub fn at(&self, t: usize) -> usize {
        self.phi[t - self.dropped]
    }

    #[inline]
    fn set(&mut self, t: usize, value: usize) {
        let slot = t - self.dropped;
        if slot == self.phi.len() {
            self.phi.push(value);
        } else {
            self.phi[slot] = value;
        }
    }

    /// `Φ[p]`.
    pub fn head(&self) -> usize {
        self.at(self.p)
    }

    /// `Φ[q]`.
    pub fn tail(&self) -> usize {
        self.at(self.q)
    }

    /// Copy of the live window `Φ[p..=q]`.
    pub fn window(&self) -> Vec<usize> {
        (self.p..=self.q).map(|t| self.at(t)).collect()
    }

    /// Appends every `r` in `r_from..=r_to`, first popping tail entries whose
    /// chain link no longer ends at the longest minimum-density prefix.
    pub fn update(&mut self, ps: &PrefixSums, r_from: usize, r_to: usize, counters: &mut Counters) {
        for r in r_from..=r_to {
            while self.p < self.q {
                let prev = self.at(self.q - 1);
                let link_end = self.at(self.q) - 1;
                if ps.density(prev, link_end) >= ps.density(prev, r - 1) {
                    self.q -= 1;
                    counters.pops += 1;
                } else {
                    break;
                }
            }
            self.q += 1;
            self.set(self.q, r);
            counters.pushes += 1;
        }
    }

    /// Largest maximizer of `d(i, j)` over `i ∈ [Φ[p], Φ[q]]`, advancing `p`
    /// to it.
    pub fn lbest(&mut self, ps: &PrefixSums, j: usize, counters: &mut Counters) -> usize {
        while self.p < self.q {
            let head = self.at(self.p);
            let next = self.at(self.p + 1);
            if ps.density(head, next - 1) <= ps.density(head, j) {
                self.p += 1;
                counters.lbest_advances += 1;
            } else {
                break;
            }
        }
        self.head()
    }

    /// Advances `p` while `Φ[p] < ell`. The caller guarantees `Φ[q] >= ell`.
    pub fn skip_below(&mut self, ell: usize, counters: &mut Counters) {
        while self.at(self.p) < ell {
            assert!(self.p < self.q, "deque exhausted while skipping to {ell}");
            self.p += 1;
            counters.skip_advances += 1;
        }
    }

    /// Releases slots below `p`.
    pub fn compact(&mut self) {
        if self.p > self.dropped + 1 {
            let drop = self.p - 1 - self.dropped;
            self.phi.drain(..drop);
            self.dropped += drop;
        }
    }

    /// Number of retained slots, live or dead.
    pub fn retained(&self) -> usize {
        self.phi.len()
    }
}

/// Result of a solver run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveReport {
    pub best: Solution,
    pub counters: Counters,
}

/// Solves an instance whose upper bound is ineffective.
///
/// Emits one deque candidate `(i_j, j)` per `j ∈ [j0, n]` to the observer.
/// Only the maximum over those candidates is guaranteed optimal.
pub fn solve_ineffective<O: Observer + ?Sized>(
    inst: &ProblemInstance,
    observer: &mut O,
) -> Result<SolveReport> {
    let ps = build_prefix_sums(&inst.seq)?;
    let n = ps.len();
    let total = ps.w(n);
    if inst.w_max < total {
        return Err(Error::EffectiveUpperBound {
            w_max: inst.w_max,
            total,
        });
    }
    let bounds = compute_bounds(&ps, inst.w_min, inst.w_max)?;
    let mut deque = PhiDeque::new();
    let mut counters = Counters::default();
    let mut best: Option<Solution> = None;
    for j in bounds.j0..=n {
        counters.steps += 1;
        deque.update(&ps, bounds.r[j - 1] + 1, bounds.r[j], &mut counters);
        observer.after_update(j, &deque);
        let i = deque.lbest(&ps, j, &mut counters);
        let event = CandidateEvent {
            segment: Segment::new(i, j),
            density: ps.density(i, j),
            source: Source::Deque,
        };
        observer.on_event(&event);
        Solution::keep_best(&mut best, Solution::new(event.segment, event.density));
    }
    let best = best.ok_or(Error::NoFeasibleSegment)?;
    Ok(SolveReport { best, counters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_best, brute_force_phi, brute_force_solve};
    use crate::sequence::{Density, NumberPair};
    use crate::trace::{NoObserver, Recorder};

    fn unit(a: &[i64]) -> Vec<NumberPair> {
        a.iter().map(|&v| NumberPair::unit(v)).collect()
    }

    fn chain(ps: &PrefixSums, x: usize, r: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut cur = x;
        while cur < r {
            cur = brute_force_phi(ps, cur, r - 1) + 1;
            out.push(cur);
        }
        out
    }

    #[test]
    fn window_is_phi_chain() {
        let ps = build_prefix_sums(&unit(&[3, 1, 2])).unwrap();
        let mut d = PhiDeque::new();
        let mut c = Counters::default();
        d.update(&ps, 1, 3, &mut c);
        assert_eq!(d.window(), chain(&ps, 1, 3));
        assert_eq!(d.tail(), 3);
    }

    #[test]
    fn first_update_pushes_through_r() {
        let ps = build_prefix_sums(&unit(&[1, 2, 3, 4])).unwrap();
        let mut d = PhiDeque::new();
        let mut c = Counters::default();
        d.update(&ps, 1, 2, &mut c);
        assert!(!d.is_empty());
        assert_eq!(d.tail(), 2);
        assert_eq!(d.p(), 1);
    }

    #[test]
    fn increasing_sequence_never_pops() {
        // φ(x, y) = x when every extension raises the density
        let ps = build_prefix_sums(&unit(&[1, 2, 3])).unwrap();
        let mut d = PhiDeque::new();
        let mut c = Counters::default();
        for r in 1..=3 {
            d.update(&ps, r, r, &mut c);
            assert_eq!(d.q() + 1 - d.p(), r);
        }
        assert_eq!(c.pops, 0);
        assert_eq!(c.pushes, 3);
    }

    #[test]
    fn decreasing_sequence_pops_every_interior_link() {
        // φ(x, y) = y, so the chain is always just [x, r]
        let ps = build_prefix_sums(&unit(&[3, 2, 1, 0])).unwrap();
        let mut d = PhiDeque::new();
        let mut c = Counters::default();
        for r in 1..=4 {
            d.update(&ps, r, r, &mut c);
            assert_eq!(d.window(), chain(&ps, 1, r));
        }
        assert_eq!(d.window(), [1, 4]);
        assert_eq!(c.pops, 2);
    }

    #[test]
    fn lbest_examples() {
        let ps = build_prefix_sums(&unit(&[2, 0, 4])).unwrap();
        let mut d = PhiDeque::new();
        let mut c = Counters::default();
        d.update(&ps, 1, 3, &mut c);
        assert_eq!(d.lbest(&ps, 3, &mut c), 3);
        assert_eq!(brute_force_best(&ps, 1, 3, 3), 3);

        let ps = build_prefix_sums(&unit(&[0, 9])).unwrap();
        let mut d = PhiDeque::new();
        let mut c = Counters::default();
        d.update(&ps, 1, 2, &mut c);
        assert_eq!(d.lbest(&ps, 2, &mut c), 2);
        assert_eq!(c.lbest_advances, 1);

        let ps = build_prefix_sums(&unit(&[5])).unwrap();
        let mut d = PhiDeque::new();
        let mut c = Counters::default();
        d.update(&ps, 1, 1, &mut c);
        assert_eq!(d.lbest(&ps, 1, &mut c), 1);
        assert_eq!(c.lbest_advances, 0);
    }

    #[test]
    fn solve_examples() {
        let inst = ProblemInstance::new(unit(&[1, 1, 0, 0]), 2, 4).unwrap();
        let report = solve_ineffective(&inst, &mut NoObserver).unwrap();
        assert_eq!(report.best.density, Density::new(1, 1));
        assert_eq!(report.best.segment, Segment::new(1, 2));

        let inst = ProblemInstance::new(unit(&[7]), 1, 1).unwrap();
        let mut rec = Recorder::default();
        let report = solve_ineffective(&inst, &mut rec).unwrap();
        assert_eq!(report.best.segment, Segment::new(1, 1));
        assert_eq!(rec.events.len(), 1);
    }

    #[test]
    fn rejects_effective_bound_and_infeasible() {
        let inst = ProblemInstance::new(unit(&[1, 1, 1]), 1, 2).unwrap();
        assert!(matches!(
            solve_ineffective(&inst, &mut NoObserver),
            Err(Error::EffectiveUpperBound { .. })
        ));
        let inst = ProblemInstance::new(unit(&[1, 1]), 3, 3).unwrap();
        assert_eq!(
            solve_ineffective(&inst, &mut NoObserver),
            Err(Error::NoFeasibleSegment)
        );
    }

    #[test]
    fn matches_oracle_on_small_sweep() {
        // all sign patterns of length 6 over {-1, 0, 2}
        let vals = [-1i64, 0, 2];
        for code in 0..3usize.pow(6) {
            let a: Vec<i64> = (0..6).map(|k| vals[(code / 3usize.pow(k)) % 3]).collect();
            for w_min in 1..=6 {
                let inst = ProblemInstance::ineffective(unit(&a), w_min).unwrap();
                let fast = solve_ineffective(&inst, &mut NoObserver).unwrap();
                let slow = brute_force_solve(&inst).unwrap();
                assert_eq!(fast.best.density, slow.density, "a={a:?} w_min={w_min}");
            }
        }
    }

    #[test]
    fn compact_preserves_logical_positions() {
        let ps = build_prefix_sums(&unit(&[0, 1, 2, 3])).unwrap();
        let mut d = PhiDeque::new();
        let mut c = Counters::default();
        d.update(&ps, 1, 4, &mut c);
        d.skip_below(3, &mut c);
        let before = d.window();
        d.compact();
        assert_eq!(d.window(), before);
        assert_eq!(d.retained(), 3);
        d.update(&ps, 5, 4, &mut c);
        assert_eq!(d.window(), before);
    }
}
