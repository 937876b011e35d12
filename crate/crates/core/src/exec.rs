//! Deterministic evaluation kernels for large sums and tables.
//!
//! All heavy loops in the crate funnel through these helpers. The index range
//! is cut into fixed-size chunks; each chunk is summed sequentially in index
//! order and the partial sums are then added in chunk order. The parallel
//! path (feature `parallel`, on by default) distributes whole chunks across
//! threads but preserves the same partial sums and the same final addition
//! order, so sequential and parallel results are bitwise identical and runs
//! are reproducible regardless of thread count.

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Fixed chunk length; also the two-level summation block, which keeps
/// round-off growth far below the identity tolerances even at 10^7 terms.
pub const CHUNK: u64 = 4096;

/// Minimum term count before the parallel path engages.
#[cfg(feature = "parallel")]
const PAR_MIN: u64 = 2 * CHUNK;

#[inline]
fn chunk_sum<S, T>(scratch: &mut S, lo: u64, hi: u64, term: &T) -> Complex64
where
    T: Fn(&mut S, u64) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for m in lo..hi {
        acc += term(scratch, m);
    }
    acc
}

/// Sequential chunked sum of `term(scratch, m)` for m in 0..count. `init`
/// builds the per-chunk scratch state (reused within a chunk).
pub fn reduce_sum_seq<S, I, T>(count: u64, init: I, term: T) -> Complex64
where
    I: Fn() -> S,
    T: Fn(&mut S, u64) -> Complex64,
{
    let mut total = Complex64::new(0.0, 0.0);
    let mut lo = 0;
    while lo < count {
        let hi = (lo + CHUNK).min(count);
        let mut scratch = init();
        total += chunk_sum(&mut scratch, lo, hi, &term);
        lo = hi;
    }
    total
}

/// Parallel chunked sum; bitwise identical to [`reduce_sum_seq`].
#[cfg(feature = "parallel")]
pub fn reduce_sum_par<S, I, T>(count: u64, init: I, term: T) -> Complex64
where
    I: Fn() -> S + Sync,
    T: Fn(&mut S, u64) -> Complex64 + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let partials: Vec<Complex64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(count);
            let mut scratch = init();
            chunk_sum(&mut scratch, lo, hi, &term)
        })
        .collect();
    partials.into_iter().sum()
}

/// Chunked sum, parallel when the feature is enabled and the range is large.
pub fn reduce_sum<S, I, T>(count: u64, init: I, term: T) -> Complex64
where
    I: Fn() -> S + Sync,
    T: Fn(&mut S, u64) -> Complex64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if count >= PAR_MIN {
            return reduce_sum_par(count, init, term);
        }
    }
    reduce_sum_seq(count, init, term)
}

/// Builds a table `[f(0), …, f(n-1)]`, in parallel when available. Each entry
/// is computed independently, so ordering concerns do not arise.
pub fn map_table<F>(n: usize, f: F) -> Vec<Complex64>
where
    F: Fn(usize) -> Complex64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if n > 1 {
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}
