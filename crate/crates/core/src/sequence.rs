//! Sequence representation, prefix sums and exact density comparison.
//!
//! All values are scaled integers. Sums are kept in `i64` and densities are
//! compared by cross-multiplying in `i128`, so the order on densities is
//! exact for every input inside [`MAX_MAGNITUDE`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted magnitude of a scaled value, and largest scaled width.
pub const MAX_MAGNITUDE: i64 = 1 << 31;

/// One input element: a value and a strictly positive width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NumberPair {
    pub a: i64,
    pub w: i64,
}

impl NumberPair {
    pub const fn new(a: i64, w: i64) -> Self {
        Self { a, w }
    }

    /// Unit-width element.
    pub const fn unit(a: i64) -> Self {
        Self { a, w: 1 }
    }

    /// Checks the element against the ingestion rules. `index` is 1-based
    /// and only used for the error.
    pub fn validate(&self, index: usize) -> Result<()> {
        if self.w <= 0 {
            return Err(Error::NonPositiveWidth {
                index,
                width: self.w,
            });
        }
        if self.w > MAX_MAGNITUDE || self.a.abs() > MAX_MAGNITUDE {
            return Err(Error::OutOfRange { index });
        }
        Ok(())
    }
}

/// A sequence together with its width bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub seq: Vec<NumberPair>,
    pub w_min: i64,
    pub w_max: i64,
}

impl ProblemInstance {
    pub fn new(seq: Vec<NumberPair>, w_min: i64, w_max: i64) -> Result<Self> {
        check_bounds(w_min, w_max)?;
        if seq.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (k, pair) in seq.iter().enumerate() {
            pair.validate(k + 1)?;
        }
        Ok(Self { seq, w_min, w_max })
    }

    /// Instance whose upper bound is the total width, so only `w_min` constrains.
    pub fn ineffective(seq: Vec<NumberPair>, w_min: i64) -> Result<Self> {
        let total: i64 = seq.iter().map(|p| p.w).sum();
        Self::new(seq, w_min, total.max(w_min))
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn total_width(&self) -> i64 {
        self.seq.iter().map(|p| p.w).sum()
    }
}

pub(crate) fn check_bounds(w_min: i64, w_max: i64) -> Result<()> {
    if w_min <= 0 || w_min > w_max {
        return Err(Error::InvalidBounds { w_min, w_max });
    }
    Ok(())
}

/// Segment `S(i, j)`, 1-based and inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub i: usize,
    pub j: usize,
}

impl Segment {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn shifted(self, offset: usize) -> Self {
        Self {
            i: self.i + offset,
            j: self.j + offset,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Exact rational `num / den` with `den > 0`.
///
/// Equality and ordering are those of the rational numbers, so `1/3 == 2/6`.
#[derive(Debug, Clone, Copy)]
pub struct Density {
    pub num: i64,
    pub den: i64,
}

impl Density {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den > 0, "density denominator must be positive, got {den}");
        Self { num, den }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        cmp_density(*self, *other) == Ordering::Equal
    }
}

impl Eq for Density {}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_density(*self, *other)
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Sign of `x.num * y.den - y.num * x.den`.
///
/// Panics if the 128-bit products overflow, which only happens for inputs
/// outside the declared range.
pub fn cmp_density(x: Density, y: Density) -> Ordering {
    let lhs = (x.num as i128).checked_mul(y.den as i128);
    let rhs = (y.num as i128).checked_mul(x.den as i128);
    match (lhs, rhs) {
        (Some(l), Some(r)) => l.cmp(&r),
        _ => panic!("density comparison overflowed: {x} vs {y}"),
    }
}

/// A segment with its density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Solution {
    pub segment: Segment,
    pub density: Density,
}

impl Solution {
    pub fn new(segment: Segment, density: Density) -> Self {
        Self { segment, density }
    }

    /// Global preference order: higher density, then larger `j`, then larger `i`.
    pub fn beats(&self, other: &Solution) -> bool {
        match self.density.cmp(&other.density) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => {
                (self.segment.j, self.segment.i) > (other.segment.j, other.segment.i)
            }
        }
    }

    /// Keeps whichever of `slot` and `candidate` is preferred.
    pub fn keep_best(slot: &mut Option<Solution>, candidate: Solution) {
        match slot {
            Some(best) if !candidate.beats(best) => {}
            _ => *slot = Some(candidate),
        }
    }
}

/// Cumulative sums `A[0..=n]` and `W[0..=n]`.
///
/// Entries below `base` may have been discarded by a streaming consumer;
/// reading them panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSums {
    base: usize,
    a: Vec<i64>,
    w: Vec<i64>,
}

impl PrefixSums {
    /// Prefix sums of the empty sequence.
    pub fn new() -> Self {
        Self {
            base: 0,
            a: vec![0],
            w: vec![0],
        }
    }

    /// Number of elements summed so far.
    pub fn len(&self) -> usize {
        self.base + self.a.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `A[k]`.
    #[inline]
    pub fn a(&self, k: usize) -> i64 {
        self.a[k - self.base]
    }

    /// `W[k]`.
    #[inline]
    pub fn w(&self, k: usize) -> i64 {
        self.w[k - self.base]
    }

    /// Width `w(i, j)` of the 1-based segment `[i, j]`.
    #[inline]
    pub fn width(&self, i: usize, j: usize) -> i64 {
        self.w(j) - self.w(i - 1)
    }

    /// Density `d(i, j)`. Panics unless `1 <= i <= j <= n`.
    #[inline]
    pub fn density(&self, i: usize, j: usize) -> Density {
        assert!(
            1 <= i && i <= j && j <= self.len(),
            "segment ({i}, {j}) out of range for n = {}",
            self.len()
        );
        Density {
            num: self.a(j) - self.a(i - 1),
            den: self.w(j) - self.w(i - 1),
        }
    }

    /// Appends one element. Fails on a non-positive width or sum overflow.
    pub fn push(&mut self, pair: NumberPair) -> Result<()> {
        let index = self.len() + 1;
        if pair.w <= 0 {
            return Err(Error::NonPositiveWidth {
                index,
                width: pair.w,
            });
        }
        let last_a = *self.a.last().expect("prefix arrays are never empty");
        let last_w = *self.w.last().expect("prefix arrays are never empty");
        match (last_a.checked_add(pair.a), last_w.checked_add(pair.w)) {
            (Some(a), Some(w)) => {
                self.a.push(a);
                self.w.push(w);
                Ok(())
            }
            _ => Err(Error::OutOfRange { index }),
        }
    }

    /// Oldest prefix index still readable.
    pub fn base(&self) -> usize {
        self.base
    }

    /// Drops stored prefixes with index below `k`.
    pub fn discard_before(&mut self, k: usize) {
        let k = k.min(self.len());
        if k > self.base {
            let drop = k - self.base;
            self.a.drain(..drop);
            self.w.drain(..drop);
            self.base = k;
        }
    }

    /// Number of stored prefix entries.
    pub fn stored(&self) -> usize {
        self.a.len()
    }
}

impl Default for PrefixSums {
    fn default() -> Self {
        Self::new()
    }
}

/// Builds `A` and `W` for `seq`. Rejects the first element with `w <= 0`.
pub fn build_prefix_sums(seq: &[NumberPair]) -> Result<PrefixSums> {
    let mut ps = PrefixSums {
        base: 0,
        a: Vec::with_capacity(seq.len() + 1),
        w: Vec::with_capacity(seq.len() + 1),
    };
    ps.a.push(0);
    ps.w.push(0);
    for &pair in seq {
        ps.push(pair)?;
    }
    Ok(ps)
}

/// Free-function form of [`PrefixSums::density`].
pub fn density(ps: &PrefixSums, i: usize, j: usize) -> Density {
    ps.density(i, j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(v: &[(i64, i64)]) -> Vec<NumberPair> {
        v.iter().map(|&(a, w)| NumberPair::new(a, w)).collect()
    }

    #[test]
    fn prefix_sums_examples() {
        let ps = build_prefix_sums(&pairs(&[(2, 1), (0, 1), (4, 1)])).unwrap();
        assert_eq!((0..=3).map(|k| ps.a(k)).collect::<Vec<_>>(), [0, 2, 2, 6]);
        assert_eq!((0..=3).map(|k| ps.w(k)).collect::<Vec<_>>(), [0, 1, 2, 3]);

        let empty = build_prefix_sums(&[]).unwrap();
        assert_eq!(empty.len(), 0);
        assert_eq!((empty.a(0), empty.w(0)), (0, 0));

        let one = build_prefix_sums(&pairs(&[(-3, 2)])).unwrap();
        assert_eq!((one.a(1), one.w(1)), (-3, 2));
    }

    #[test]
    fn rejects_non_positive_width_with_index() {
        let err = build_prefix_sums(&pairs(&[(1, 1), (1, 0), (1, -1)])).unwrap_err();
        assert_eq!(err, Error::NonPositiveWidth { index: 2, width: 0 });
    }

    #[test]
    fn density_examples() {
        let ps = build_prefix_sums(&pairs(&[(2, 1), (0, 1), (4, 1)])).unwrap();
        let d = ps.density(1, 3);
        assert_eq!((d.num, d.den), (6, 3));
        let d = ps.density(3, 3);
        assert_eq!((d.num, d.den), (4, 1));
        let ps = build_prefix_sums(&pairs(&[(1, 2), (1, 3)])).unwrap();
        let d = ps.density(1, 2);
        assert_eq!((d.num, d.den), (2, 5));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn density_out_of_range_panics() {
        let ps = build_prefix_sums(&pairs(&[(1, 1)])).unwrap();
        ps.density(1, 2);
    }

    #[test]
    fn comparator_examples() {
        assert_eq!(
            cmp_density(Density::new(1, 3), Density::new(2, 6)),
            Ordering::Equal
        );
        assert_eq!(
            cmp_density(Density::new(6, 3), Density::new(4, 1)),
            Ordering::Less
        );
        assert_eq!(
            cmp_density(Density::new(-1, 2), Density::new(-1, 3)),
            Ordering::Less
        );
    }

    #[test]
    fn comparator_handles_declared_extremes() {
        let n = 1i64 << 31;
        let big = Density::new(MAX_MAGNITUDE * n, 1);
        let small = Density::new(-MAX_MAGNITUDE * n, MAX_MAGNITUDE * n);
        assert_eq!(cmp_density(big, small), Ordering::Greater);
    }

    #[test]
    fn validate_range() {
        assert!(NumberPair::new(MAX_MAGNITUDE, MAX_MAGNITUDE)
            .validate(1)
            .is_ok());
        assert_eq!(
            NumberPair::new(MAX_MAGNITUDE + 1, 1).validate(4),
            Err(Error::OutOfRange { index: 4 })
        );
    }

    #[test]
    fn discard_keeps_logical_indices() {
        let mut ps = build_prefix_sums(&pairs(&[(1, 1), (2, 1), (3, 1), (4, 1)])).unwrap();
        ps.discard_before(2);
        assert_eq!(ps.base(), 2);
        assert_eq!(ps.len(), 4);
        assert_eq!(ps.density(3, 4), Density::new(7, 2));
        ps.push(NumberPair::unit(5)).unwrap();
        assert_eq!(ps.a(5), 15);
        assert_eq!(ps.stored(), 4);
    }
}
