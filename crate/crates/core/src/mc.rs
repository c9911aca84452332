//! Deterministic parallel sampling.
//!
//! Work is split into a fixed number of substreams, each driven by its own
//! ChaCha stream derived from `(seed, stream index)`. Results depend only on
//! the seed and the requested sample count, never on the thread count or on
//! scheduling, because per-stream results are combined in stream order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Number of substreams a sampling job is split into.
pub const STREAMS: usize = 64;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Share of `n` assigned to substream `i` out of `STREAMS`.
pub fn quota(n: usize, i: usize) -> usize {
    n / STREAMS + usize::from(i < n % STREAMS)
}

/// Runs `job(rng, quota)` on every substream and returns the results in
/// stream order.
pub fn run_streams<T, F>(seed: u64, n: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
{
    (0..STREAMS)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            job(&mut rng, quota(n, i))
        })
        .collect()
}
