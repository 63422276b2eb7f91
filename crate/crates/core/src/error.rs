//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by constructors and operations when a precondition fails.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    InvalidDimension,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("state norm deviates from 1 by more than 1e-12: got {norm_sq} for |psi|^2")]
    NotNormalized { norm_sq: f64 },

    #[error("radii must be nonnegative, got {0}")]
    NegativeRadius(f64),

    #[error("equivalence margin must lie in (0, 0.2], got {0}")]
    InvalidEpsilon(f64),

    #[error("Monte Carlo estimator needs at least {min} trials, got {got}")]
    TooFewTrials { min: u64, got: u64 },

    #[error("infeasible partition: m={m}, n={n} with amplitudes |a|={amp_l}, |b|={amp_r}")]
    InfeasiblePartition {
        m: usize,
        n: usize,
        amp_l: f64,
        amp_r: f64,
    },

    #[error("scale parameter must be positive, got {0}")]
    InvalidScale(f64),

    #[error("selectivity margin must be nonnegative, got {0}")]
    InvalidMargin(f64),

    #[error("deviation half-width must lie in (0, 0.5), got {0}")]
    InvalidDeviationBound(f64),

    #[error("competing-state count must be at least 2, got {0}")]
    TooFewStates(u64),

    #[error("barrier constant must be positive, got {0}")]
    InvalidBarrier(f64),

    #[error("winner elongation {winner} is below runner-up {runner_up}")]
    UnorderedElongations { winner: f64, runner_up: f64 },

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("grid cell side must lie in (0, 0.1], got {0}")]
    InvalidCellSize(f64),

    #[error("radius must exceed the cell side: r={r}, d={d}")]
    RadiusBelowCell { r: f64, d: f64 },

    #[error("radius range must satisfy d < r_lo < r_hi, got [{r_lo}, {r_hi}] at d={d}")]
    InvalidRadiusRange { r_lo: f64, r_hi: f64, d: f64 },

    #[error("amplitude fraction must lie in [0, 1], got {0}")]
    InvalidAmplitudeFraction(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
