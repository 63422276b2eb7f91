//! Winner-margin statistics for competing extreme-value draws.
//!
//! Thermally driven elongation maxima follow the Gumbel law
//! `F(phi) = exp(-exp(-(phi - mu)/sigma))`. The probability that the
//! largest of `n` draws beats the second-largest by more than a margin `a`
//! has the closed form `p(n, a) = 1 / ((1 - 1/n) e^{a/sigma} + 1/n)`,
//! checked here against a direct Monte Carlo of the order statistics.

use rand::Rng;

use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::mc;
use crate::rng::TrialRng;

/// Location and scale of the extreme-value law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GumbelParams {
    pub mu: f64,
    pub sigma: f64,
}

impl GumbelParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if sigma.is_nan() || sigma <= 0.0 {
            return Err(Error::InvalidScale(sigma));
        }
        Ok(Self { mu, sigma })
    }
}

/// A selectivity question: `n` competing states, a required winner margin,
/// and the fluctuation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectivityQuery {
    pub n: u64,
    pub margin: f64,
    pub params: GumbelParams,
}

impl SelectivityQuery {
    pub fn new(n: u64, margin: f64, params: GumbelParams) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewStates(n));
        }
        if margin.is_nan() || margin < 0.0 {
            return Err(Error::InvalidMargin(margin));
        }
        Ok(Self { n, margin, params })
    }
}

/// Inverse length scale of the tunnel barrier; the winning amplitude is
/// enhanced by `exp(kappa * phi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunnelBarrier {
    pub kappa: f64,
}

impl TunnelBarrier {
    pub fn new(kappa: f64) -> Result<Self> {
        if kappa.is_nan() || kappa <= 0.0 {
            return Err(Error::InvalidBarrier(kappa));
        }
        Ok(Self { kappa })
    }
}

/// Gumbel distribution function.
pub fn gumbel_cdf(phi: f64, params: &GumbelParams) -> f64 {
    (-(-(phi - params.mu) / params.sigma).exp()).exp()
}

/// Inverse-CDF draw: `phi = mu - sigma ln(-ln u)` with `u` uniform on
/// (0, 1). Boundary draws are clamped to the nearest interior value so the
/// logs stay finite.
pub fn gumbel_sample<R: Rng + ?Sized>(params: &GumbelParams, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    let u = u.clamp(f64::MIN_POSITIVE, 1.0_f64.next_down());
    params.mu - params.sigma * (-u.ln()).ln()
}

/// Index of the maximum plus the gap to the second-largest value, in one
/// pass. `values` must hold at least two entries.
pub fn max_and_gap(values: &[f64]) -> (usize, f64) {
    assert!(values.len() >= 2);
    let (mut best_idx, mut best, mut second) = if values[0] >= values[1] {
        (0, values[0], values[1])
    } else {
        (1, values[1], values[0])
    };
    for (i, &v) in values.iter().enumerate().skip(2) {
        if v > best {
            second = best;
            best = v;
            best_idx = i;
        } else if v > second {
            second = v;
        }
    }
    (best_idx, best - second)
}

/// Closed-form winner-margin probability
/// `p(n, a) = 1 / ((1 - 1/n) e^{a/sigma} + 1/n)`.
pub fn selectivity_closed_form(q: &SelectivityQuery) -> f64 {
    let inv_n = 1.0 / q.n as f64;
    ((1.0 - inv_n) * (q.margin / q.params.sigma).exp() + inv_n).recip()
}

/// First-order expansion in `a/sigma`: `1 - (1 - 1/n) a/sigma`.
pub fn selectivity_first_order(q: &SelectivityQuery) -> f64 {
    1.0 - (1.0 - 1.0 / q.n as f64) * q.margin / q.params.sigma
}

/// Minimum trial count accepted by the Monte Carlo estimator.
pub const MIN_TRIALS: u64 = 1_000;

/// Monte Carlo winner-margin probability: per trial, draw `n` elongations
/// and test whether the maximum clears the second-largest by more than the
/// margin.
pub fn selectivity_monte_carlo(
    q: &SelectivityQuery,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    if trials < MIN_TRIALS {
        return Err(Error::TooFewTrials {
            min: MIN_TRIALS,
            got: trials,
        });
    }
    let hits = mc::count_hits(trials, seed, |rng| margin_hit(q, rng));
    Ok(Estimate::from_binomial(hits, trials, seed))
}

/// Sequential variant of [`selectivity_monte_carlo`] with identical
/// output; kept public for throughput comparison.
pub fn selectivity_monte_carlo_seq(
    q: &SelectivityQuery,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    if trials < MIN_TRIALS {
        return Err(Error::TooFewTrials {
            min: MIN_TRIALS,
            got: trials,
        });
    }
    let hits = mc::count_hits_seq(trials, seed, |rng| margin_hit(q, rng));
    Ok(Estimate::from_binomial(hits, trials, seed))
}

fn margin_hit(q: &SelectivityQuery, rng: &mut TrialRng) -> bool {
    // Track the top two draws directly; no buffer even for n in the
    // millions.
    let mut best = f64::NEG_INFINITY;
    let mut second = f64::NEG_INFINITY;
    for _ in 0..q.n {
        let phi = gumbel_sample(&q.params, rng);
        if phi > best {
            second = best;
            best = phi;
        } else if phi > second {
            second = phi;
        }
    }
    best - second > q.margin
}

/// Tunnel-amplitude dominance factor `exp(kappa (winner - runner_up))`.
pub fn amplitude_ratio(
    winner_phi: f64,
    runner_up_phi: f64,
    barrier: &TunnelBarrier,
) -> Result<f64> {
    if winner_phi < runner_up_phi {
        return Err(Error::UnorderedElongations {
            winner: winner_phi,
            runner_up: runner_up_phi,
        });
    }
    Ok((barrier.kappa * (winner_phi - runner_up_phi)).exp())
}
