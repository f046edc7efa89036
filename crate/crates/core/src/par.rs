//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers run on the rayon pool; without it
//! (or with [`Parallelism::Sequential`]) they are plain iterator loops. Both
//! paths return identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the exhaustive kernels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// Whether this build can actually run in parallel.
    pub fn available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// First (lowest index) `Some` produced by `f` over `0..n`.
pub fn find_map_first<T, F>(n: u64, mode: Parallelism, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => (0..n).into_par_iter().find_map_first(f),
        _ => (0..n).find_map(f),
    }
}

/// `f` applied to every item, results in input order.
pub fn map_collect<I, T, F>(items: &[I], mode: Parallelism, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Whether `f` holds for every index in `0..n`.
pub fn all<F>(n: u64, mode: Parallelism, f: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => (0..n).into_par_iter().all(f),
        _ => (0..n).all(f),
    }
}
