//! Online driver for the general solver.
//!
//! Elements arrive one at a time. Prefix sums and window cursors are
//! extended on the fly, each end index is processed as soon as it arrives,
//! and a variant call whose end range reaches past the newest element is
//! suspended and resumed on later pushes. Storage below the oldest index any
//! future step can read is released, so for narrow windows the live state
//! stays proportional to the window rather than to the input.

use crate::bounds::BoundsCursor;
use crate::error::{Error, Result};
use crate::general::shift_call;
use crate::ineffective::{PhiDeque, SolveReport};
use crate::sequence::{check_bounds, NumberPair, PrefixSums, Segment, Solution};
use crate::trace::{CandidateEvent, Counters, NoObserver, Observer, Source};
use crate::variant::VariantTask;

#[derive(Debug, Clone)]
struct ChunkState {
    ps: PrefixSums,
    cursor: BoundsCursor,
    deque: PhiDeque,
    last_i: usize,
    r_prev: usize,
    tasks: Vec<VariantTask>,
}

impl ChunkState {
    fn new(w_min: i64, w_max: i64) -> Self {
        Self {
            ps: PrefixSums::new(),
            cursor: BoundsCursor::new(w_min, w_max),
            deque: PhiDeque::new(),
            last_i: 1,
            r_prev: 0,
            tasks: Vec::new(),
        }
    }

    /// Smallest element index a later step may still read.
    fn live_floor(&self) -> usize {
        let mut floor = self.cursor.ell().min(self.r_prev + 1);
        if !self.deque.is_empty() {
            floor = floor.min(self.deque.head());
        }
        for task in &self.tasks {
            floor = floor.min(task.low_water());
        }
        floor
    }
}

/// Single-owner online solver. Feed elements with [`push`](Self::push) and
/// call [`finalize`](Self::finalize) once the input ends.
#[derive(Debug, Clone)]
pub struct StreamingSolver {
    w_min: i64,
    w_max: i64,
    offset: usize,
    ingested: usize,
    chunk: Option<ChunkState>,
    best: Option<Solution>,
    counters: Counters,
    peak_live: usize,
}

impl StreamingSolver {
    pub fn new(w_min: i64, w_max: i64) -> Result<Self> {
        check_bounds(w_min, w_max)?;
        Ok(Self {
            w_min,
            w_max,
            offset: 0,
            ingested: 0,
            chunk: None,
            best: None,
            counters: Counters::default(),
            peak_live: 0,
        })
    }

    /// Ingests one element and returns the candidates it made resolvable.
    pub fn push(&mut self, pair: NumberPair) -> Result<Vec<CandidateEvent>> {
        let mut out = Vec::new();
        self.push_with(pair, &mut |e: &CandidateEvent| out.push(*e))?;
        Ok(out)
    }

    /// Like [`push`](Self::push) but reports to an observer.
    pub fn push_with<O: Observer + ?Sized>(
        &mut self,
        pair: NumberPair,
        observer: &mut O,
    ) -> Result<()> {
        pair.validate(self.ingested + 1)?;
        self.ingested += 1;
        if pair.w > self.w_max {
            self.close_chunk(observer);
            self.offset = self.ingested;
            return Ok(());
        }
        let (w_min, w_max, offset) = (self.w_min, self.w_max, self.offset);
        let chunk = self
            .chunk
            .get_or_insert_with(|| ChunkState::new(w_min, w_max));
        let index = self.ingested;
        chunk
            .ps
            .push(pair)
            .map_err(|_| Error::OutOfRange { index })?;
        let j = chunk.ps.len();
        let moves_before = chunk.cursor.moves();
        let (ell, r) = chunk.cursor.advance(&chunk.ps, j);
        self.counters.cursor_moves += chunk.cursor.moves() - moves_before;

        let best = &mut self.best;
        let counters = &mut self.counters;
        let mut emit = |event: CandidateEvent, observer: &mut O| {
            let event = CandidateEvent {
                segment: event.segment.shifted(offset),
                ..event
            };
            observer.on_event(&event);
            Solution::keep_best(best, Solution::new(event.segment, event.density));
        };

        for task in chunk.tasks.iter_mut() {
            task.resume(
                &chunk.ps,
                j,
                w_max,
                |_| ell,
                counters,
                |e| emit(e, observer),
            );
        }
        retire_done(&mut chunk.tasks, offset, observer);

        if r == 0 {
            // total width still below w_min
            return Ok(());
        }
        counters.steps += 1;
        chunk.deque.update(&chunk.ps, chunk.r_prev + 1, r, counters);
        chunk.r_prev = r;
        observer.after_update(j, &chunk.deque);

        if ell <= r {
            chunk.deque.skip_below(ell, counters);
            let head = chunk.deque.head();
            if chunk.last_i < head {
                assert!(
                    chunk.ps.width(head, j) >= w_min,
                    "variant precondition violated at j = {j}: w({head}, {j}) < w_min"
                );
                let mut task = VariantTask::new(&chunk.ps, ell, head, j, counters);
                task.resume(
                    &chunk.ps,
                    j,
                    w_max,
                    |_| ell,
                    counters,
                    |e| emit(e, observer),
                );
                chunk.tasks.push(task);
                retire_done(&mut chunk.tasks, offset, observer);
            }
            let i = chunk.deque.lbest(&chunk.ps, j, counters);
            emit(
                CandidateEvent {
                    segment: Segment::new(i, j),
                    density: chunk.ps.density(i, j),
                    source: Source::Deque,
                },
                observer,
            );
            chunk.last_i = i;
        }

        let floor = chunk.live_floor();
        self.peak_live = self.peak_live.max(j + 1 - floor.min(j));
        let dead = floor.saturating_sub(1).saturating_sub(chunk.ps.base());
        if dead > 32 && dead * 2 > chunk.ps.stored() {
            chunk.ps.discard_before(floor - 1);
            chunk.deque.compact();
        }
        Ok(())
    }

    fn close_chunk<O: Observer + ?Sized>(&mut self, observer: &mut O) {
        if let Some(mut chunk) = self.chunk.take() {
            for task in chunk.tasks.iter_mut() {
                task.close();
            }
            retire_done(&mut chunk.tasks, self.offset, observer);
        }
    }

    /// Best solution over everything ingested so far, if any.
    pub fn current_best(&self) -> Option<Solution> {
        self.best
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    /// Largest span of element indices that had to stay readable at once.
    pub fn peak_live_span(&self) -> usize {
        self.peak_live
    }

    /// Number of prefix entries currently stored.
    pub fn stored_prefixes(&self) -> usize {
        self.chunk.as_ref().map_or(0, |c| c.ps.stored())
    }

    pub fn ingested(&self) -> usize {
        self.ingested
    }

    /// Ends the input and returns the optimum.
    pub fn finalize(self) -> Result<SolveReport> {
        self.finalize_with(&mut NoObserver)
    }

    pub fn finalize_with<O: Observer + ?Sized>(mut self, observer: &mut O) -> Result<SolveReport> {
        self.close_chunk(observer);
        let best = self.best.ok_or(Error::NoFeasibleSegment)?;
        Ok(SolveReport {
            best,
            counters: self.counters,
        })
    }
}

fn retire_done<O: Observer + ?Sized>(
    tasks: &mut Vec<VariantTask>,
    offset: usize,
    observer: &mut O,
) {
    tasks.retain(|task| {
        if task.is_done() {
            observer.on_variant(&shift_call(task.call(), offset));
            false
        } else {
            true
        }
    });
}
