//! Replicate fan-out with a deterministic result order.

use rayon::prelude::*;

/// Worker count from `SUSLAB_WORKERS`, falling back to 1.
pub fn workers_from_env() -> usize {
    std::env::var("SUSLAB_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or(1)
}

/// Runs `job(0..reps)` on `workers` threads and returns results in replicate order.
pub fn run_replicates<T, F>(workers: usize, reps: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if workers <= 1 || reps <= 1 {
        return (0..reps).map(job).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| (0..reps).into_par_iter().map(job).collect())
}
