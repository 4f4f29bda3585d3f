//! Deterministic data-parallel helpers.
//!
//! Every helper here combines per-item results in a fixed order that does not
//! depend on the number of worker threads, so outputs are bit-identical
//! whether the `parallel` feature is on, off, or capped to one thread.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Force the sequential code path at runtime (used by benches and `--threads 1`).
pub fn set_sequential(seq: bool) {
    FORCE_SEQUENTIAL.store(seq, Ordering::SeqCst);
}

pub fn is_sequential() -> bool {
    if cfg!(not(feature = "parallel")) {
        return true;
    }
    FORCE_SEQUENTIAL.load(Ordering::SeqCst)
}

/// Cap the rayon worker count (1 forces the sequential path outright).
/// Results do not depend on the cap; only wall time does.
pub fn configure_threads(n: usize) {
    if n == 1 {
        set_sequential(true);
        return;
    }
    #[cfg(feature = "parallel")]
    if n > 1 {
        // Ignore the error if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parallel map preserving input order.
pub fn ordered_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !is_sequential() {
            use rayon::prelude::*;
            return items.par_iter().map(&f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Parallel map over an index range, preserving order.
pub fn ordered_map_indices<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !is_sequential() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(&f).collect();
        }
    }
    (0..n).map(f).collect()
}

/// Apply `f` to disjoint mutable chunks of `data`; chunk boundaries are fixed
/// by `chunk_len`, so the decomposition itself is deterministic.
pub fn for_each_chunk_mut<T, F>(data: &mut [T], chunk_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    assert!(chunk_len > 0);
    #[cfg(feature = "parallel")]
    {
        if !is_sequential() {
            use rayon::prelude::*;
            data.par_chunks_mut(chunk_len)
                .enumerate()
                .for_each(|(i, c)| f(i, c));
            return;
        }
    }
    for (i, c) in data.chunks_mut(chunk_len).enumerate() {
        f(i, c);
    }
}
