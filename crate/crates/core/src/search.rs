//! Seeded, shardable trial loops.
//!
//! Every trial draws from its own ChaCha stream selected by the trial index,
//! so a trial's outcome depends only on `(seed, index)`. Splitting the index
//! range across threads and keeping the lowest successful index therefore
//! reproduces the sequential result exactly.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x6d61_7873_7562; // "maxsub"

/// The random stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs `attempt(0)`, `attempt(1)`, … up to `budget` and returns the first
/// success with its index.
pub fn first_success<T, F>(budget: u64, mut attempt: F) -> Option<(u64, T)>
where
    F: FnMut(u64) -> Option<T>,
{
    (0..budget).find_map(|i| attempt(i).map(|t| (i, t)))
}

/// Same result as [`first_success`], with trial indices interleaved across
/// `shards` threads.
pub fn first_success_sharded<T, F>(budget: u64, shards: usize, attempt: F) -> Option<(u64, T)>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    if shards <= 1 {
        return first_success(budget, attempt);
    }
    let best = AtomicU64::new(u64::MAX);
    let found: Mutex<Option<(u64, T)>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for shard in 0..shards as u64 {
            let (best, found, attempt) = (&best, &found, &attempt);
            scope.spawn(move || {
                let mut i = shard;
                while i < budget && i < best.load(Ordering::Acquire) {
                    if let Some(t) = attempt(i) {
                        let mut slot = found.lock().unwrap();
                        if slot.as_ref().is_none_or(|(j, _)| i < *j) {
                            *slot = Some((i, t));
                            best.fetch_min(i, Ordering::AcqRel);
                        }
                        return;
                    }
                    i += shards as u64;
                }
            });
        }
    });
    found.into_inner().unwrap()
}
