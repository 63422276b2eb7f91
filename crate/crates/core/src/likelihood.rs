//! Maximum-likelihood amplitude configurations and their fluctuations.
//!
//! The class-volume weight `prod r_k` is maximized, over unit-normalized
//! profiles, by equal amplitudes `sqrt(1/n)` (AM-GM). Deviations are
//! tracked relative to that maximum as `r_k = sqrt(1/n) (1 + delta_k)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::state::RadialProfile;

/// The equal-amplitude profile: every entry `sqrt(1/n)`.
pub fn ml_profile(n: usize) -> Result<RadialProfile> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    let r = (1.0 / n as f64).sqrt();
    RadialProfile::new(vec![r; n])
}

/// Relative deviations from the equal-amplitude configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationProfile {
    deltas: Vec<f64>,
    rms: f64,
}

impl DeviationProfile {
    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    /// Root-mean-square deviation `sqrt((1/n) sum delta_k^2)`.
    pub fn rms(&self) -> f64 {
        self.rms
    }

    pub fn max_abs(&self) -> f64 {
        self.deltas.iter().fold(0.0, |m, d| m.max(d.abs()))
    }
}

/// `delta_k = sqrt(n) r_k - 1` for each entry, plus the rms aggregate.
pub fn deviations(profile: &RadialProfile) -> DeviationProfile {
    let n = profile.dim() as f64;
    let sqrt_n = n.sqrt();
    let deltas: Vec<f64> = profile.radii().iter().map(|r| sqrt_n * r - 1.0).collect();
    let rms = (deltas.iter().map(|d| d * d).sum::<f64>() / n).sqrt();
    DeviationProfile { deltas, rms }
}

/// Log of the class-volume weight relative to the equal-amplitude maximum:
/// `sum_k ln(sqrt(n) r_k)`. A zero radius yields negative infinity, the
/// documented sentinel for lower-dimensional classes.
pub fn log_likelihood_ratio(profile: &RadialProfile) -> f64 {
    let sqrt_n = (profile.dim() as f64).sqrt();
    profile.radii().iter().map(|r| (sqrt_n * r).ln()).sum()
}

/// Width of the Gaussian law for the rms deviation: `(3n)^{-1/2}`.
pub fn gaussian_width(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    Ok((3.0 * n as f64).sqrt().recip())
}

/// A random unit profile near the equal-amplitude point: deltas drawn
/// uniformly in `[-max_delta, max_delta]`, centered and rescaled back into
/// that range, then renormalized. Centering keeps the renormalization
/// shift quadratic in `max_delta`, so the final deviations stay within
/// `max_delta (1 + max_delta)`.
pub fn near_equal_profile<R: Rng + ?Sized>(
    n: usize,
    max_delta: f64,
    rng: &mut R,
) -> Result<RadialProfile> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    if !(max_delta > 0.0 && max_delta < 0.5) {
        return Err(Error::InvalidDeviationBound(max_delta));
    }
    let mut deltas: Vec<f64> = (0..n)
        .map(|_| rng.random_range(-max_delta..=max_delta))
        .collect();
    let mean = deltas.iter().sum::<f64>() / n as f64;
    for delta in &mut deltas {
        *delta -= mean;
    }
    let max_abs = deltas.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
    if max_abs > max_delta {
        let scale = max_delta / max_abs;
        for delta in &mut deltas {
            *delta *= scale;
        }
    }
    let base = (1.0 / n as f64).sqrt();
    RadialProfile::normalized(deltas.iter().map(|d| base * (1.0 + d)).collect())
}
