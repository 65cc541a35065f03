//! Per-mode data parallelism.
//!
//! Every kernel that loops over independent Fourier modes goes through the
//! helpers here. With the `parallel` feature the work is split across the
//! rayon pool; without it (or with [`Execution::Sequential`]) the same
//! closure runs in a plain loop. Each element is written by exactly one
//! closure call, so results are bitwise identical in both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum number of items before the parallel path is taken.
const PAR_THRESHOLD: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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
    /// True if this call will actually fan out over rayon.
    pub fn is_parallel_for(self, len: usize) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel && len >= PAR_THRESHOLD
    }
}

/// `(0..n).map(f).collect()`, possibly in parallel.
pub fn map_indexed<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel_for(n) {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Calls `f(k, &mut a[k], &mut b[k])` for every index.
pub fn for_each_pair<A, B, F>(exec: Execution, a: &mut [A], b: &mut [B], f: F)
where
    A: Send,
    B: Send,
    F: Fn(usize, &mut A, &mut B) + Sync + Send,
{
    assert_eq!(a.len(), b.len());
    #[cfg(feature = "parallel")]
    if exec.is_parallel_for(a.len()) {
        a.par_iter_mut()
            .zip(b.par_iter_mut())
            .enumerate()
            .for_each(|(k, (x, y))| f(k, x, y));
        return;
    }
    let _ = exec;
    for (k, (x, y)) in a.iter_mut().zip(b.iter_mut()).enumerate() {
        f(k, x, y);
    }
}
