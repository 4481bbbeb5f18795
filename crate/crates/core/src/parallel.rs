//! Data-parallel map with a sequential fallback.
//!
//! All grid sweeps in this crate funnel through [`par_map`], which dispatches
//! to rayon when the `parallel` feature is enabled and to a plain loop
//! otherwise.  Output order always matches input order, so the two paths are
//! interchangeable.
//!
//! Thread count is capped by the `RESCURVE_THREADS` environment variable
//! (checked once, at first use).  Unset, empty, or unparsable values leave
//! rayon's default (one thread per logical CPU).

#[cfg(feature = "parallel")]
use std::sync::OnceLock;

/// Environment variable that caps the worker thread count.
pub const THREADS_ENV_VAR: &str = "RESCURVE_THREADS";

#[cfg(feature = "parallel")]
fn thread_pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = configured_threads() {
            builder = builder.num_threads(n);
        }
        builder
            .build()
            .expect("failed to build worker thread pool")
    })
}

/// Thread cap from the environment, if one is set and sensible.
pub fn configured_threads() -> Option<usize> {
    std::env::var(THREADS_ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Map `f` over `items`, preserving order.
///
/// With the `parallel` feature this runs on a dedicated rayon pool; without
/// it, on the calling thread.  `f` must be `Sync` because it may be invoked
/// from several workers at once.
#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    use rayon::prelude::*;
    thread_pool().install(|| items.par_iter().map(&f).collect())
}

/// Map `f` over `items`, preserving order (sequential build).
#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    map_serial(items, f)
}

/// Sequential map, always available.  Benchmarks use this as the baseline
/// against the parallel path.
pub fn map_serial<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
