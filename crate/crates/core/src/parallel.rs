//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`]
//! dispatches to rayon. Without it every call runs sequentially, so results
//! never depend on the feature: reductions are combined in index order.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True when this build can actually run work on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Applies `f` to every item, preserving order.
pub fn map_collect<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Splits `0..total` into fixed-size chunks, maps each chunk and folds the
/// partial results left to right.
pub fn chunked_reduce<A, M, R>(exec: Execution, total: u64, chunk: u64, map: M, reduce: R) -> Option<A>
where
    A: Send,
    M: Fn(Range<u64>) -> A + Sync + Send,
    R: Fn(A, A) -> A,
{
    let chunk = chunk.max(1);
    let ranges: Vec<Range<u64>> = (0..total.div_ceil(chunk))
        .map(|c| c * chunk..((c + 1) * chunk).min(total))
        .collect();
    let partials = map_collect(exec, &ranges, |r| map(r.clone()));
    partials.into_iter().reduce(reduce)
}
