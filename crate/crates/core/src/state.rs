//! Pure-state sampling under the unitarily invariant measure.
//!
//! A state is a unit vector of `n` complex amplitudes. Sampling draws `2n`
//! independent standard Gaussians and normalizes; the push-forward of an
//! isotropic Gaussian is exactly the basis-independent measure on the unit
//! sphere. The radial profile keeps only the moduli, which is all the
//! phase-equivalence machinery ever looks at.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Tolerance on the unit-norm invariant, after explicit renormalization.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A normalized vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Validates dimension and unit norm (within [`NORM_TOLERANCE`]).
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidDimension);
        }
        let norm_sq: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }
}

/// Nonnegative moduli of a state vector, with unit quadratic norm.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    radii: Vec<f64>,
}

impl RadialProfile {
    /// Validates nonnegativity and unit quadratic norm.
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidDimension);
        }
        if let Some(&r) = radii.iter().find(|&&r| r < 0.0) {
            return Err(Error::NegativeRadius(r));
        }
        let norm_sq: f64 = radii.iter().map(|r| r * r).sum();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { radii })
    }

    /// Builds a profile from arbitrary nonnegative weights by normalizing.
    pub fn normalized(mut radii: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidDimension);
        }
        if let Some(&r) = radii.iter().find(|&&r| r < 0.0) {
            return Err(Error::NegativeRadius(r));
        }
        let norm = radii.iter().map(|r| r * r).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized { norm_sq: 0.0 });
        }
        for r in &mut radii {
            *r /= norm;
        }
        Ok(Self { radii })
    }

    pub fn dim(&self) -> usize {
        self.radii.len()
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// The class-volume weight: the product of all radii.
    pub fn product(&self) -> f64 {
        self.radii.iter().product()
    }
}

/// Draws a state uniformly with respect to the invariant measure:
/// `2n` standard Gaussians, renormalized.
pub fn sample_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<StateVector> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    loop {
        let mut amps = Vec::with_capacity(n);
        let mut norm_sq = 0.0;
        for _ in 0..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            norm_sq += re * re + im * im;
            amps.push(Complex64::new(re, im));
        }
        // A zero draw has probability zero but would not normalize.
        if norm_sq > 0.0 {
            let scale = norm_sq.sqrt().recip();
            for c in &mut amps {
                *c *= scale;
            }
            return Ok(StateVector { amps });
        }
    }
}

/// Strips phases: `r_k = |c_k|`.
pub fn radial_profile(psi: &StateVector) -> RadialProfile {
    RadialProfile {
        radii: psi.amps.iter().map(|c| c.norm()).collect(),
    }
}

/// Distance between phase-equivalence classes: the minimum over all
/// per-coefficient phase rotations of the Euclidean distance, which each
/// rotation minimizes independently, leaving
/// `sqrt(sum_k (|c'_k| - |c_k|)^2)`.
pub fn phase_distance(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    if psi.dim() != phi.dim() {
        return Err(Error::DimensionMismatch {
            left: psi.dim(),
            right: phi.dim(),
        });
    }
    let sum: f64 = psi
        .amps
        .iter()
        .zip(&phi.amps)
        .map(|(a, b)| {
            let d = a.norm() - b.norm();
            d * d
        })
        .sum();
    Ok(sum.sqrt())
}

/// Same metric evaluated directly between radial profiles.
pub fn radial_distance(a: &RadialProfile, b: &RadialProfile) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let sum: f64 = a
        .radii
        .iter()
        .zip(&b.radii)
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(sum.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Substreams;

    #[test]
    fn zero_dimension_is_rejected() {
        let mut rng = Substreams::new(1).stream(0);
        assert_eq!(sample_state(0, &mut rng).unwrap_err(), Error::InvalidDimension);
        assert_eq!(StateVector::new(vec![]).unwrap_err(), Error::InvalidDimension);
    }

    #[test]
    fn one_dimensional_states_have_unit_modulus() {
        let subs = Substreams::new(2);
        for t in 0..100 {
            let psi = sample_state(1, &mut subs.stream(t)).unwrap();
            assert!((psi.amps()[0].norm() - 1.0).abs() <= NORM_TOLERANCE);
        }
    }

    #[test]
    fn sampled_states_are_normalized() {
        let subs = Substreams::new(3);
        for t in 0..100 {
            let psi = sample_state(6, &mut subs.stream(t)).unwrap();
            let norm_sq: f64 = psi.amps().iter().map(|c| c.norm_sqr()).sum();
            assert!((norm_sq - 1.0).abs() <= NORM_TOLERANCE);
        }
    }

    #[test]
    fn radial_profile_strips_phases() {
        let psi = StateVector::new(vec![
            Complex64::from_polar(0.6, 1.3),
            Complex64::from_polar(0.8, -0.2),
        ])
        .unwrap();
        let prof = radial_profile(&psi);
        assert!((prof.radii()[0] - 0.6).abs() < 1e-15);
        assert!((prof.radii()[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn radial_profile_of_basis_state() {
        let psi = StateVector::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
            .unwrap();
        assert_eq!(radial_profile(&psi).radii(), &[1.0, 0.0]);
    }

    #[test]
    fn radial_profile_handles_mixed_phases() {
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let psi = StateVector::new(vec![
            Complex64::new(0.0, inv_sqrt2),
            Complex64::new(-inv_sqrt2, 0.0),
        ])
        .unwrap();
        let prof = radial_profile(&psi);
        assert!((prof.radii()[0] - inv_sqrt2).abs() < 1e-15);
        assert!((prof.radii()[1] - inv_sqrt2).abs() < 1e-15);
    }

    #[test]
    fn phase_rotations_have_zero_distance() {
        let subs = Substreams::new(4);
        let psi = sample_state(5, &mut subs.stream(0)).unwrap();
        let rotated = StateVector::new(
            psi.amps()
                .iter()
                .enumerate()
                .map(|(k, c)| c * Complex64::from_polar(1.0, 0.7 * k as f64 + 0.1))
                .collect(),
        )
        .unwrap();
        assert!(phase_distance(&psi, &rotated).unwrap() <= 1e-12);
    }

    #[test]
    fn disjoint_support_distance_is_sqrt_two() {
        let e1 = StateVector::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
            .unwrap();
        let e2 = StateVector::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        let d = phase_distance(&e1, &e2).unwrap();
        assert!((d - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let subs = Substreams::new(5);
        let a = sample_state(2, &mut subs.stream(0)).unwrap();
        let b = sample_state(3, &mut subs.stream(1)).unwrap();
        assert!(matches!(
            phase_distance(&a, &b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn profile_constructor_rejects_bad_input() {
        assert!(matches!(
            RadialProfile::new(vec![0.9, -0.1]),
            Err(Error::NegativeRadius(_))
        ));
        assert!(matches!(
            RadialProfile::new(vec![0.9, 0.9]),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn normalized_constructor_scales_weights() {
        let p = RadialProfile::normalized(vec![3.0, 4.0]).unwrap();
        assert!((p.radii()[0] - 0.6).abs() < 1e-15);
        assert!((p.radii()[1] - 0.8).abs() < 1e-15);
    }
}
