//! Deterministic reductions.
//!
//! Sums are formed over fixed-size chunks whose partial results are combined by
//! an index-ordered pairwise tree. The chunking depends only on the input length,
//! so results are bit-identical for any number of worker threads.

use rayon::prelude::*;

/// Number of consecutive values reduced by one task.
pub const CHUNK: usize = 4096;

fn pairwise(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        return values.iter().fold(0.0, |a, b| a + b);
    }
    let mid = values.len() / 2;
    pairwise(&values[..mid]) + pairwise(&values[mid..])
}

fn pairwise_map(start: usize, end: usize, f: &(impl Fn(usize) -> f64 + Sync)) -> f64 {
    if end - start <= 8 {
        return (start..end).fold(0.0, |a, i| a + f(i));
    }
    let mid = start + (end - start) / 2;
    pairwise_map(start, mid, f) + pairwise_map(mid, end, f)
}

/// Sum of a slice.
pub fn sum(values: &[f64]) -> f64 {
    let partial: Vec<f64> = values.par_chunks(CHUNK).map(pairwise).collect();
    pairwise(&partial)
}

/// Sum of `f(i)` for `i` in `0..len`.
pub fn sum_map(len: usize, f: impl Fn(usize) -> f64 + Sync) -> f64 {
    let chunks = len.div_ceil(CHUNK);
    let partial: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| pairwise_map(c * CHUNK, ((c + 1) * CHUNK).min(len), &f))
        .collect();
    pairwise(&partial)
}

/// Maximum of `f(i)` for `i` in `0..len`; NaN propagates. Returns 0 for an empty range.
pub fn max_map(len: usize, f: impl Fn(usize) -> f64 + Sync) -> f64 {
    (0..len)
        .into_par_iter()
        .map(&f)
        .reduce(|| 0.0_f64, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

/// Minimum of `f(i)` for `i` in `0..len`; NaN propagates. Returns +inf for an empty range.
pub fn min_map(len: usize, f: impl Fn(usize) -> f64 + Sync) -> f64 {
    (0..len)
        .into_par_iter()
        .map(&f)
        .reduce(|| f64::INFINITY, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.min(b) })
}

/// Largest absolute value of a slice.
pub fn max_abs(values: &[f64]) -> f64 {
    max_map(values.len(), |i| values[i].abs())
}
