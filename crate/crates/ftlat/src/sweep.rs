//! The exhaustive pair sweep spread over a fixed number of worker threads.
//!
//! Rows of the pair triangle are cut into fixed chunks and the partial
//! matrices are summed, so the result does not depend on the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};

use ftlat_core::exrec::{AlphaMatrix, Engine};
use rayon::prelude::*;

use crate::Error;

const CHUNK: usize = 16;

/// α over all pairs, on `jobs` threads. `progress(done, total)` is called
/// with the number of finished rows.
pub fn sweep(engine: &Engine, jobs: usize, progress: impl Fn(usize, usize) + Sync) -> Result<AlphaMatrix, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {jobs} workers: {e}")))?;
    let n = engine.len();
    let done = AtomicUsize::new(0);
    let chunks: Vec<(usize, usize)> = (0..n).step_by(CHUNK).map(|lo| (lo, (lo + CHUNK).min(n))).collect();
    let m = pool.install(|| {
        chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let part = engine.alpha_rows(lo..hi);
                progress(done.fetch_add(hi - lo, Ordering::Relaxed) + hi - lo, n);
                part
            })
            .reduce(AlphaMatrix::default, |mut a, b| {
                a.merge(&b);
                a
            })
    });
    Ok(m)
}
