//! Execution strategy for exhaustive sweeps.
//!
//! With the `parallel` feature the work is split across the rayon pool; without it every
//! request runs sequentially. Results are always returned in input order.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
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
    /// What actually runs: `Parallel` degrades to `Sequential` without the feature.
    pub fn effective(self) -> Execution {
        if cfg!(feature = "parallel") {
            self
        } else {
            Execution::Sequential
        }
    }
}

/// Map over a slice, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Keep the `Some` results of `f` over an index range, in index order.
pub fn filter_map_range<R, F>(exec: Execution, range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => range.into_par_iter().filter_map(f).collect(),
        _ => range.filter_map(f).collect(),
    }
}

/// Count indices in a range for which `f` holds.
pub fn count_range<F>(exec: Execution, range: Range<u64>, f: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => range.into_par_iter().filter(|&i| f(i)).count() as u64,
        _ => range.filter(|&i| f(i)).count() as u64,
    }
}

/// True when `f` holds for every item. Stops early on the first failure.
pub fn all<T, F>(exec: Execution, items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().all(f),
        _ => items.iter().all(f),
    }
}
