//! Synthetic instance generators for benchmarks and randomized tests.

use rand::Rng;

use crate::sequence::{NumberPair, ProblemInstance};
use crate::sparse::{Run, RunLengthSequence};

/// `n` unit-width elements with values uniform in `[-9, 9]`.
pub fn uniform_values<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<NumberPair> {
    (0..n)
        .map(|_| NumberPair::unit(rng.random_range(-9..=9)))
        .collect()
}

/// `n` elements whose widths alternate between 1 and `w_max`, values uniform
/// in `[-9, 9]`. Every other element fills a whole window on its own.
pub fn alternating_widths<R: Rng + ?Sized>(rng: &mut R, n: usize, w_max: i64) -> Vec<NumberPair> {
    (0..n)
        .map(|k| {
            let w = if k % 2 == 0 { 1 } else { w_max };
            NumberPair::new(rng.random_range(-9..=9), w)
        })
        .collect()
}

/// Small random instance: `1..=n_max` elements, values in `[-a_abs, a_abs]`,
/// widths in `1..=w_top`, and bounds with `w_min <= w(1, n)` so that at
/// least the total width is reachable.
pub fn small_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n_max: usize,
    a_abs: i64,
    w_top: i64,
) -> ProblemInstance {
    let n = rng.random_range(1..=n_max);
    let seq: Vec<_> = (0..n)
        .map(|_| {
            NumberPair::new(
                rng.random_range(-a_abs..=a_abs),
                rng.random_range(1..=w_top),
            )
        })
        .collect();
    let total: i64 = seq.iter().map(|p| p.w).sum();
    // bias toward narrow windows, which exercise the effective upper bound
    let w_min = rng.random_range(1..=total.min(3 * w_top).max(1));
    let w_max = rng.random_range(w_min..=(w_min + 3 * w_top).min(total).max(w_min));
    ProblemInstance::new(seq, w_min, w_max).expect("generated instance is valid")
}

/// Random run-length sequence with `1..=m_max` runs of length `1..=run_max`
/// and values in `[-a_abs, a_abs]`.
pub fn run_length<R: Rng + ?Sized>(
    rng: &mut R,
    m_max: usize,
    run_max: usize,
    a_abs: i64,
) -> RunLengthSequence {
    let m = rng.random_range(1..=m_max);
    let mut end = 0;
    let runs = (0..m)
        .map(|_| {
            end += rng.random_range(1..=run_max);
            Run {
                value: rng.random_range(-a_abs..=a_abs),
                end,
            }
        })
        .collect();
    RunLengthSequence::new(runs).expect("generated runs are valid")
}
