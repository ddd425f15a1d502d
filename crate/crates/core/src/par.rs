//! Data-parallel trial driver. Each trial gets an independent RNG derived
//! from the battery seed and trial index, so results do not depend on the
//! execution mode.

use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution mode for trial batteries. `Parallel` falls back to sequential
/// when the `parallel` feature is disabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel,
}

impl Default for Mode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Mode::Parallel
        } else {
            Mode::Sequential
        }
    }
}

/// RNG for one trial of one battery: decorrelated across trials by a fixed
/// odd multiplier.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Runs `trials` independent checks and returns the per-trial outcomes in
/// trial order.
pub fn run_trials<T, F>(seed: u64, trials: u64, mode: Mode, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if mode == Mode::Parallel {
            return (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = trial_rng(seed, t);
                    f(t, &mut rng)
                })
                .collect();
        }
    }
    let _ = mode;
    (0..trials)
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            f(t, &mut rng)
        })
        .collect()
}

/// Convenience: counts failing trials of a boolean property.
pub fn count_failures<F>(seed: u64, trials: u64, mode: Mode, f: F) -> u64
where
    F: Fn(u64, &mut ChaCha8Rng) -> bool + Sync,
{
    run_trials(seed, trials, mode, f)
        .into_iter()
        .filter(|ok| !ok)
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_across_modes() {
        let seq: Vec<u64> = run_trials(42, 64, Mode::Sequential, |t, rng| {
            use rand::Rng;
            t ^ rng.gen::<u64>()
        });
        let par: Vec<u64> = run_trials(42, 64, Mode::Parallel, |t, rng| {
            use rand::Rng;
            t ^ rng.gen::<u64>()
        });
        assert_eq!(seq, par);
    }
}
