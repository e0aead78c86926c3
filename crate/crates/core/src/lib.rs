//! Maximum-density segment search under width bounds.
//!
//! Given pairs `(a_i, w_i)` with `w_i > 0` and bounds `w_min <= w_max`, find
//! a consecutive segment whose width lies in `[w_min, w_max]` and whose
//! density `sum(a) / sum(w)` is largest. [`general::solve`] does this in
//! `O(n)` worst-case time, [`streaming::StreamingSolver`] does the same one
//! element at a time, and [`sparse::solve_sparse`] handles run-length encoded
//! unit-width input in `O(m)` for `m` runs.
//!
//! All arithmetic is exact: values are scaled integers and densities compare
//! by 128-bit cross-multiplication.

pub mod bounds;
pub mod error;
pub mod general;
pub mod ineffective;
pub mod ingest;
pub mod oracle;
pub mod sequence;
pub mod sparse;
pub mod streaming;
pub mod synth;
pub mod trace;
pub mod variant;

pub use error::{Error, Result};
pub use general::solve;
pub use ineffective::{solve_ineffective, PhiDeque, SolveReport};
pub use sequence::{
    build_prefix_sums, cmp_density, density, Density, NumberPair, PrefixSums, ProblemInstance,
    Segment, Solution,
};
pub use sparse::{solve_sparse, RunLengthSequence};
pub use streaming::StreamingSolver;
pub use trace::{CandidateEvent, Counters, NoObserver, Observer, Recorder, Source};
