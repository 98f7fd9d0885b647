//! Shared rayon thread pool honoring the `POLYSYM_THREADS` env variable.
//!
//! `POLYSYM_THREADS=n` caps the worker count; unset or unparsable values
//! fall back to rayon's default (one worker per logical CPU). The pool is
//! built once, on first use.

use std::sync::OnceLock;

static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();

/// Runs `f` inside the shared pool, so that `rayon::par_iter` calls beneath
/// it use the capped worker count.
pub(crate) fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    pool().install(f)
}

fn pool() -> &'static rayon::ThreadPool {
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("POLYSYM_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n >= 1)
        {
            builder = builder.num_threads(n);
        }
        builder.build().expect("thread pool construction")
    })
}
