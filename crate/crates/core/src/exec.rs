//! Execution strategy for the exhaustive verification passes.
//!
//! The passes (classification over all submodule pairs, monoid tables,
//! per-point ultrafilter and continuity checks) are independent per index.
//! With the `parallel` feature they run on the rayon pool; without it every
//! strategy degrades to a plain sequential loop. Results are always
//! collected in index order, so output never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// `f(0), f(1), ..., f(n - 1)` in order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Maps and flattens, keeping index order.
    pub fn flat_map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> Vec<T> + Sync + Send,
    {
        self.map(n, f).into_iter().flatten().collect()
    }

    /// First index (in order) for which `f` yields `Some`.
    pub fn find_first<T, F>(self, n: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().find_map_first(f),
            _ => (0..n).find_map(f),
        }
    }
}
