//! Monte Carlo trial drivers.
//!
//! All drivers exist in two flavors: the default entry point, which runs
//! trials on rayon when the `parallel` feature is enabled, and an
//! always-available `_seq` variant. Both reduce with operations that are
//! exact and order-independent (integer sums, index-ordered collection),
//! so the two flavors return identical values for the same seed.

use crate::rng::{Substreams, TrialRng};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Counts trials for which `pred` holds.
pub fn count_hits<F>(trials: u64, seed: u64, pred: F) -> u64
where
    F: Fn(&mut TrialRng) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        let subs = Substreams::new(seed);
        (0..trials)
            .into_par_iter()
            .map(|t| u64::from(pred(&mut subs.stream(t))))
            .sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_hits_seq(trials, seed, pred)
    }
}

/// Sequential twin of [`count_hits`].
pub fn count_hits_seq<F>(trials: u64, seed: u64, pred: F) -> u64
where
    F: Fn(&mut TrialRng) -> bool,
{
    let subs = Substreams::new(seed);
    (0..trials)
        .map(|t| u64::from(pred(&mut subs.stream(t))))
        .sum()
}

/// Counts two events at once; returns (hits of first, hits of second).
pub fn count_pair<F>(trials: u64, seed: u64, f: F) -> (u64, u64)
where
    F: Fn(&mut TrialRng) -> (bool, bool) + Sync,
{
    #[cfg(feature = "parallel")]
    {
        let subs = Substreams::new(seed);
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let (a, b) = f(&mut subs.stream(t));
                (u64::from(a), u64::from(b))
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1))
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_pair_seq(trials, seed, f)
    }
}

/// Sequential twin of [`count_pair`].
pub fn count_pair_seq<F>(trials: u64, seed: u64, f: F) -> (u64, u64)
where
    F: Fn(&mut TrialRng) -> (bool, bool),
{
    let subs = Substreams::new(seed);
    (0..trials).fold((0, 0), |acc, t| {
        let (a, b) = f(&mut subs.stream(t));
        (acc.0 + u64::from(a), acc.1 + u64::from(b))
    })
}

/// Collects one value per trial, in trial-index order.
pub fn collect_trials<T, F>(trials: u64, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut TrialRng) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        let subs = Substreams::new(seed);
        (0..trials)
            .into_par_iter()
            .map(|t| f(&mut subs.stream(t)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        collect_trials_seq(trials, seed, f)
    }
}

/// Sequential twin of [`collect_trials`].
pub fn collect_trials_seq<T, F>(trials: u64, seed: u64, f: F) -> Vec<T>
where
    F: Fn(&mut TrialRng) -> T,
{
    let subs = Substreams::new(seed);
    (0..trials).map(|t| f(&mut subs.stream(t))).collect()
}

/// Pairwise summation with a fixed reduction tree; the result depends only
/// on the slice contents, not on thread count.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}
