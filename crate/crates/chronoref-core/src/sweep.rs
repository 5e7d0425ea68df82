//! Execution strategy for the oracle sweeps.
//!
//! The enumeration and harness loops are flat index spaces, so they can be
//! partitioned freely across workers. Results are deterministic either way:
//! searches return the match with the lowest index and reductions are
//! commutative tallies.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether a sweep runs on the rayon pool or on the calling thread.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Sweep {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        Sweep::Parallel
    }

    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        Sweep::Sequential
    }
}

/// First `Some` produced over `0..len`, by index order.
pub(crate) fn find_map_first<T, F>(mode: Sweep, len: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match mode {
        Sweep::Sequential => (0..len).find_map(f),
        #[cfg(feature = "parallel")]
        Sweep::Parallel => (0..len).into_par_iter().find_map_first(f),
    }
}

/// Maps `0..len` and collects in index order.
pub(crate) fn map_collect<T, F>(mode: Sweep, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        Sweep::Sequential => (0..len).map(f).collect(),
        #[cfg(feature = "parallel")]
        Sweep::Parallel => (0..len).into_par_iter().map(f).collect(),
    }
}

/// Folds per-index results with a commutative, associative merge.
pub(crate) fn map_reduce<T, F, M>(mode: Sweep, len: usize, identity: T, f: F, merge: M) -> T
where
    T: Send + Sync + Clone,
    F: Fn(usize) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    match mode {
        Sweep::Sequential => (0..len).map(f).fold(identity, merge),
        #[cfg(feature = "parallel")]
        Sweep::Parallel => (0..len)
            .into_par_iter()
            .map(f)
            .reduce(|| identity.clone(), merge),
    }
}
