//! Volume of a phase-equivalence class on the unit sphere.
//!
//! The closed form is `(4 eps)^-1 (2 pi)^n (prod r_k) V_ball(n, eps)`; only
//! the `prod r_k` factor depends on the profile, so acceptance checks
//! compare ratios, where the convention-dependent constant cancels. The
//! Monte Carlo estimator is plain hit-or-miss over invariant-measure
//! samples.

use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::mc;
use crate::state::{sample_state, RadialProfile};

/// Volume of an n-dimensional ball of radius `eps`.
///
/// Computed by the recurrence `V_n = V_{n-2} * 2 pi eps^2 / n` with
/// `V_0 = 1`, `V_1 = 2 eps`, which is exact for every integer dimension.
pub fn ball_volume(n: usize, eps: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    if eps <= 0.0 {
        return Err(Error::InvalidEpsilon(eps));
    }
    let mut even = 1.0; // V_0
    let mut odd = 2.0 * eps; // V_1
    let step = 2.0 * std::f64::consts::PI * eps * eps;
    for k in 2..=n {
        if k.is_multiple_of(2) {
            even *= step / k as f64;
        } else {
            odd *= step / k as f64;
        }
    }
    Ok(if n.is_multiple_of(2) { even } else { odd })
}

/// A phase-equivalence class: a reference radial profile and the margin
/// `eps` within which radial distances count as equivalent.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceClassSpec {
    profile: RadialProfile,
    epsilon: f64,
}

/// Margins above this value leave the small-margin regime the closed form
/// is derived in.
pub const MAX_EPSILON: f64 = 0.2;

impl EquivalenceClassSpec {
    pub fn new(profile: RadialProfile, epsilon: f64) -> Result<Self> {
        if epsilon <= 0.0 || epsilon > MAX_EPSILON {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        Ok(Self { profile, epsilon })
    }

    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The bare profile-dependent weight `prod r_k`.
    pub fn relative_weight(&self) -> f64 {
        self.profile.product()
    }
}

/// Closed-form class volume, including the overall
/// `(4 eps)^-1 (2 pi)^n V_ball(n, eps)` factor.
///
/// Returns 0 when any radius vanishes: the class is lower-dimensional,
/// which is a value, not an error.
pub fn volume_closed_form(spec: &EquivalenceClassSpec) -> f64 {
    let n = spec.profile.dim();
    let eps = spec.epsilon;
    let ball = ball_volume(n, eps).expect("spec invariants guarantee valid arguments");
    (2.0 * std::f64::consts::PI).powi(n as i32) / (4.0 * eps)
        * spec.relative_weight()
        * ball
}

/// Hit-or-miss Monte Carlo estimate of the class volume as a fraction of
/// the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub estimate: Estimate,
    pub hits: u64,
}

impl VolumeEstimate {
    /// True when no sample landed in the margin; the caller should raise
    /// `trials` or `eps`.
    pub fn never_hit(&self) -> bool {
        self.hits == 0
    }
}

/// Minimum trial count accepted by the Monte Carlo estimators.
pub const MIN_TRIALS: u64 = 1_000;

/// Fraction of invariant-measure samples whose radial profile lies within
/// `eps` of the reference profile, with binomial standard error.
pub fn volume_monte_carlo(
    spec: &EquivalenceClassSpec,
    trials: u64,
    seed: u64,
) -> Result<VolumeEstimate> {
    if trials < MIN_TRIALS {
        return Err(Error::TooFewTrials {
            min: MIN_TRIALS,
            got: trials,
        });
    }
    let n = spec.profile.dim();
    let radii = spec.profile.radii();
    let eps_sq = spec.epsilon * spec.epsilon;
    let hits = mc::count_hits(trials, seed, |rng| {
        let psi = sample_state(n, rng).expect("n >= 1 by construction");
        let mut dist_sq = 0.0;
        for (c, &r) in psi.amps().iter().zip(radii) {
            let d = c.norm() - r;
            dist_sq += d * d;
        }
        dist_sq < eps_sq
    });
    Ok(VolumeEstimate {
        estimate: Estimate::from_binomial(hits, trials, seed),
        hits,
    })
}

/// Sequential variant of [`volume_monte_carlo`] with identical output;
/// kept public for throughput comparison.
pub fn volume_monte_carlo_seq(
    spec: &EquivalenceClassSpec,
    trials: u64,
    seed: u64,
) -> Result<VolumeEstimate> {
    if trials < MIN_TRIALS {
        return Err(Error::TooFewTrials {
            min: MIN_TRIALS,
            got: trials,
        });
    }
    let n = spec.profile.dim();
    let radii = spec.profile.radii();
    let eps_sq = spec.epsilon * spec.epsilon;
    let hits = mc::count_hits_seq(trials, seed, |rng| {
        let psi = sample_state(n, rng).expect("n >= 1 by construction");
        let mut dist_sq = 0.0;
        for (c, &r) in psi.amps().iter().zip(radii) {
            let d = c.norm() - r;
            dist_sq += d * d;
        }
        dist_sq < eps_sq
    });
    Ok(VolumeEstimate {
        estimate: Estimate::from_binomial(hits, trials, seed),
        hits,
    })
}
