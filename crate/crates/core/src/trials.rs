//! Deterministic Monte Carlo driver.
//!
//! Every trial gets its own ChaCha stream keyed by (seed, trial index), so the
//! aggregate is a sum of values that depend only on the trial index. Summation
//! is commutative, which makes the parallel and sequential schedules produce
//! bit-identical results.

use std::ops::Add;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("at least one trial is required")]
pub struct ZeroTrials;

/// The rng stream for one trial of a seeded experiment.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs `trials` independent computations and sums their results. Dispatches
/// to rayon when the `parallel` feature is enabled.
pub fn run_trials<T, F>(trials: u64, seed: u64, per_trial: F) -> T
where
    T: Send + Default + Add<Output = T>,
    F: Fn(u64, &mut ChaCha8Rng) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..trials)
            .into_par_iter()
            .map(|i| per_trial(i, &mut trial_rng(seed, i)))
            .reduce(T::default, |a, b| a + b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_trials_seq(trials, seed, per_trial)
    }
}

/// Sequential reference schedule; always available so benchmarks can compare
/// it against the dispatching version.
pub fn run_trials_seq<T, F>(trials: u64, seed: u64, per_trial: F) -> T
where
    T: Send + Default + Add<Output = T>,
    F: Fn(u64, &mut ChaCha8Rng) -> T + Sync,
{
    (0..trials).fold(T::default(), |acc, i| {
        acc + per_trial(i, &mut trial_rng(seed, i))
    })
}
