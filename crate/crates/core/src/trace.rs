//! Work counters, candidate events and the observer hook shared by the solvers.

use std::ops::AddAssign;

use crate::ineffective::PhiDeque;
use crate::sequence::{Density, Segment};

/// Operation counts for one solver run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    /// End indices `j` processed.
    pub steps: u64,
    /// Appends to the deque tail.
    pub pushes: u64,
    /// Removals from the deque tail.
    pub pops: u64,
    /// Head advances inside `lbest`.
    pub lbest_advances: u64,
    /// Head advances skipping indices below `ℓ_j`.
    pub skip_advances: u64,
    pub variant_calls: u64,
    /// Inner-walk iterations while building Ψ tables.
    pub init_steps: u64,
    /// Loop iterations inside `vbest`.
    pub vbest_steps: u64,
    /// End indices handled by variant tasks.
    pub variant_emissions: u64,
    /// Moves of the window cursors.
    pub cursor_moves: u64,
    /// Candidates evaluated outside the general solver (run-length mode).
    pub extra_candidates: u64,
}

impl Counters {
    /// Sum of every counter; the instrumented work of a run.
    pub fn total(&self) -> u64 {
        self.steps
            + self.pushes
            + self.pops
            + self.lbest_advances
            + self.skip_advances
            + self.variant_calls
            + self.init_steps
            + self.vbest_steps
            + self.variant_emissions
            + self.cursor_moves
            + self.extra_candidates
    }

    /// Every deque removal is paid for by an earlier push.
    pub fn deque_potential_holds(&self) -> bool {
        self.pops + self.lbest_advances + self.skip_advances <= self.pushes
    }
}

impl AddAssign for Counters {
    fn add_assign(&mut self, o: Self) {
        self.steps += o.steps;
        self.pushes += o.pushes;
        self.pops += o.pops;
        self.lbest_advances += o.lbest_advances;
        self.skip_advances += o.skip_advances;
        self.variant_calls += o.variant_calls;
        self.init_steps += o.init_steps;
        self.vbest_steps += o.vbest_steps;
        self.variant_emissions += o.variant_emissions;
        self.cursor_moves += o.cursor_moves;
        self.extra_candidates += o.extra_candidates;
    }
}

/// Which part of the solver produced a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Deque,
    Variant,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Deque => "deque",
            Source::Variant => "variant",
        }
    }
}

/// One emitted `(start, end)` candidate. Always a feasible segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateEvent {
    pub segment: Segment,
    pub density: Density,
    pub source: Source,
}

/// Parameters of one variant call, in the indices of the chunk it ran on
/// plus `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariantCall {
    /// Fixed right end of the start range (the deque head at call time).
    pub r: usize,
    /// First end index.
    pub y0: usize,
    /// Smallest start, `ℓ_{y0}`.
    pub ell: usize,
    /// Last end index handled.
    pub y1: usize,
}

/// Hooks into a solver run. Every method defaults to a no-op.
pub trait Observer {
    /// Called right after `update(j)`, before any head movement. `j` is local
    /// to the current chunk.
    fn after_update(&mut self, _j: usize, _deque: &PhiDeque) {}

    fn on_event(&mut self, _event: &CandidateEvent) {}

    fn on_variant(&mut self, _call: &VariantCall) {}
}

/// Observer that ignores everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoObserver;

impl Observer for NoObserver {}

/// Observer collecting every candidate event and variant call.
#[derive(Debug, Default, Clone)]
pub struct Recorder {
    pub events: Vec<CandidateEvent>,
    pub variant_calls: Vec<VariantCall>,
}

impl Observer for Recorder {
    fn on_event(&mut self, event: &CandidateEvent) {
        self.events.push(*event);
    }

    fn on_variant(&mut self, call: &VariantCall) {
        self.variant_calls.push(*call);
    }
}

impl<F: FnMut(&CandidateEvent)> Observer for F {
    fn on_event(&mut self, event: &CandidateEvent) {
        self(event)
    }
}
