//! Data-parallel helpers with a sequential fallback.
//!
//! Results are always collected in index order, so output never depends on
//! the worker count. Without the `parallel` feature everything runs on the
//! calling thread.

use std::sync::OnceLock;

/// Execution strategy for embarrassingly parallel loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Exec {
    /// Parallel when compiled with the `parallel` feature.
    pub fn default_for_build() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::default_for_build()
    }
}

/// Evaluate `f(0..n)` and return the results in index order.
pub fn map_indexed<T, F>(n: usize, exec: Exec, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Exec::Sequential => (0..n).map(f).collect(),
        Exec::Parallel => par_map(n, f),
    }
}

/// Map over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], exec: Exec, f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map_indexed(items.len(), exec, |k| f(&items[k]))
}

#[cfg(feature = "parallel")]
fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

static CONFIGURED: OnceLock<usize> = OnceLock::new();

/// Thread count from an explicit request, else `QKP_NUM_THREADS`, else the
/// runtime default (0).
pub fn requested_threads(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var("QKP_NUM_THREADS").ok().and_then(|s| s.trim().parse().ok()))
        .unwrap_or(0)
}

/// Size the global worker pool once; later calls report the first setting.
pub fn configure_threads(explicit: Option<usize>) -> usize {
    *CONFIGURED.get_or_init(|| {
        let n = requested_threads(explicit);
        #[cfg(feature = "parallel")]
        {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        n
    })
}
