//! Distributing auxiliary states between the two outcome branches.
//!
//! Given object amplitudes (|a|, |b|) and `n` auxiliary states, the first
//! `m` states carry the L branch and the rest carry R, with the branch
//! quadratic sums conserved exactly. The maximum-likelihood split `m*`
//! maximizes the log class-volume weight and lands at `n |a|^2` up to
//! integer rounding, which is the squared-amplitude rule in discrete form.

use crate::error::{Error, Result};
use crate::state::{RadialProfile, NORM_TOLERANCE};

/// A candidate split: `m` of `n` auxiliary states on the L branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionSpec {
    pub m: usize,
    pub n: usize,
    pub amp_l: f64,
    pub amp_r: f64,
}

impl PartitionSpec {
    pub fn new(m: usize, n: usize, amp_l: f64, amp_r: f64) -> Result<Self> {
        check_amplitudes(amp_l, amp_r)?;
        if m > n || n == 0 {
            return Err(Error::InfeasiblePartition { m, n, amp_l, amp_r });
        }
        Ok(Self { m, n, amp_l, amp_r })
    }

    fn is_feasible(&self) -> bool {
        !(self.m == 0 && self.amp_l > 0.0) && !(self.m == self.n && self.amp_r > 0.0)
    }
}

fn check_amplitudes(amp_l: f64, amp_r: f64) -> Result<()> {
    if amp_l < 0.0 || amp_r < 0.0 {
        return Err(Error::NegativeRadius(amp_l.min(amp_r)));
    }
    let norm_sq = amp_l * amp_l + amp_r * amp_r;
    if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(())
}

/// The maximum-likelihood profile for a fixed split: `m` entries
/// `|a|/sqrt(m)` followed by `n - m` entries `|b|/sqrt(n-m)`, carrying the
/// block structure alongside the radii.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchProfile {
    profile: RadialProfile,
    m: usize,
}

impl BranchProfile {
    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    /// Number of leading entries on the L branch.
    pub fn split(&self) -> usize {
        self.m
    }

    /// Quadratic sum of the L block.
    pub fn l_block_norm_sq(&self) -> f64 {
        self.profile.radii()[..self.m].iter().map(|r| r * r).sum()
    }

    /// Quadratic sum of the R block.
    pub fn r_block_norm_sq(&self) -> f64 {
        self.profile.radii()[self.m..].iter().map(|r| r * r).sum()
    }
}

/// Builds the constrained maximum-likelihood branch profile for a split.
pub fn ml_branch_profile(spec: &PartitionSpec) -> Result<BranchProfile> {
    if !spec.is_feasible() {
        return Err(Error::InfeasiblePartition {
            m: spec.m,
            n: spec.n,
            amp_l: spec.amp_l,
            amp_r: spec.amp_r,
        });
    }
    let mut radii = Vec::with_capacity(spec.n);
    if spec.m > 0 {
        let r_l = spec.amp_l / (spec.m as f64).sqrt();
        radii.extend(std::iter::repeat_n(r_l, spec.m));
    }
    if spec.m < spec.n {
        let r_r = spec.amp_r / ((spec.n - spec.m) as f64).sqrt();
        radii.extend(std::iter::repeat_n(r_r, spec.n - spec.m));
    }
    Ok(BranchProfile {
        profile: RadialProfile::new(radii)?,
        m: spec.m,
    })
}

/// Log class-volume weight of the split:
/// `m ln(|a|/sqrt(m)) + (n-m) ln(|b|/sqrt(n-m))`, with `0 ln 0 = 0` at the
/// feasible edges `m = 0` and `m = n`.
pub fn log_partition_weight(spec: &PartitionSpec) -> Result<f64> {
    if !spec.is_feasible() {
        return Err(Error::InfeasiblePartition {
            m: spec.m,
            n: spec.n,
            amp_l: spec.amp_l,
            amp_r: spec.amp_r,
        });
    }
    let mut weight = 0.0;
    if spec.m > 0 {
        weight += spec.m as f64 * (spec.amp_l / (spec.m as f64).sqrt()).ln();
    }
    if spec.m < spec.n {
        let rest = (spec.n - spec.m) as f64;
        weight += rest * (spec.amp_r / rest.sqrt()).ln();
    }
    Ok(weight)
}

/// The split maximizing [`log_partition_weight`], by exhaustive scan over
/// all feasible `m`. Ties break toward the smaller `m`. Edge amplitudes
/// bypass the scan: `|a| = 0` gives 0, `|b| = 0` gives `n`.
pub fn optimal_partition(n: usize, amp_l: f64, amp_r: f64) -> Result<usize> {
    check_amplitudes(amp_l, amp_r)?;
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    if amp_l == 0.0 {
        return Ok(0);
    }
    if amp_r == 0.0 {
        return Ok(n);
    }
    if n < 2 {
        return Err(Error::InfeasiblePartition {
            m: 1,
            n,
            amp_l,
            amp_r,
        });
    }
    let mut best_m = 1;
    let mut best = f64::NEG_INFINITY;
    for m in 1..n {
        let w = log_partition_weight(&PartitionSpec { m, n, amp_l, amp_r })?;
        if w > best {
            best = w;
            best_m = m;
        }
    }
    Ok(best_m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amps_from_asq(asq: f64) -> (f64, f64) {
        (asq.sqrt(), (1.0 - asq).sqrt())
    }

    #[test]
    fn degenerate_amplitudes_reduce_to_equal_profile() {
        let spec = PartitionSpec::new(6, 6, 1.0, 0.0).unwrap();
        let branch = ml_branch_profile(&spec).unwrap();
        let expected = (1.0 / 6.0_f64).sqrt();
        for &r in branch.profile().radii() {
            assert!((r - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_split_gives_uniform_entries() {
        let (a, b) = amps_from_asq(0.5);
        let spec = PartitionSpec::new(2, 4, a, b).unwrap();
        let branch = ml_branch_profile(&spec).unwrap();
        for &r in branch.profile().radii() {
            assert!((r - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn branch_entries_follow_the_block_formula() {
        let (a, b) = amps_from_asq(0.36);
        let spec = PartitionSpec::new(3, 10, a, b).unwrap();
        let branch = ml_branch_profile(&spec).unwrap();
        let radii = branch.profile().radii();
        for &r in &radii[..3] {
            assert!((r - 0.6 / 3.0_f64.sqrt()).abs() < 1e-15);
        }
        for &r in &radii[3..] {
            assert!((r - 0.8 / 7.0_f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn block_sums_are_conserved() {
        for &(m, n, asq) in &[(3usize, 10usize, 0.36), (1, 2, 0.5), (9, 12, 0.7)] {
            let (a, b) = amps_from_asq(asq);
            let branch =
                ml_branch_profile(&PartitionSpec::new(m, n, a, b).unwrap()).unwrap();
            assert!((branch.l_block_norm_sq() - asq).abs() <= 1e-12);
            assert!((branch.r_block_norm_sq() - (1.0 - asq)).abs() <= 1e-12);
        }
    }

    #[test]
    fn infeasible_splits_are_rejected() {
        let (a, b) = amps_from_asq(0.5);
        assert!(matches!(
            ml_branch_profile(&PartitionSpec::new(0, 4, a, b).unwrap()),
            Err(Error::InfeasiblePartition { .. })
        ));
        assert!(matches!(
            log_partition_weight(&PartitionSpec::new(4, 4, a, b).unwrap()),
            Err(Error::InfeasiblePartition { .. })
        ));
    }

    #[test]
    fn log_weight_of_the_symmetric_two_state_split() {
        let (a, b) = amps_from_asq(0.5);
        let w = log_partition_weight(&PartitionSpec::new(1, 2, a, b).unwrap()).unwrap();
        assert!((w + std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn log_weight_edges_use_zero_convention() {
        let w = log_partition_weight(&PartitionSpec::new(0, 5, 0.0, 1.0).unwrap())
            .unwrap();
        let expected = 5.0 * (1.0 / 5.0_f64.sqrt()).ln();
        assert!((w - expected).abs() < 1e-12);
    }

    #[test]
    fn continuous_stationary_point_matches_the_root() {
        // The log-derivative ln|a| - ln|b| - (1/2) ln m + (1/2) ln(n-m)
        // vanishes at m = n |a|^2.
        for &(n, asq) in &[(100usize, 0.36), (1000, 0.3), (50, 0.5)] {
            let (a, b) = amps_from_asq(asq);
            let root = n as f64 * asq;
            let deriv = a.ln() - b.ln() - 0.5 * root.ln() + 0.5 * (n as f64 - root).ln();
            assert!(deriv.abs() <= 1e-12, "deriv {deriv} at n={n}, asq={asq}");
        }
    }

    #[test]
    fn log_derivative_is_strictly_decreasing() {
        let (a, b) = amps_from_asq(0.36);
        let n = 100.0;
        let deriv =
            |m: f64| a.ln() - b.ln() - 0.5 * m.ln() + 0.5 * (n - m).ln();
        let mut prev = deriv(1.0);
        for m in 2..100 {
            let cur = deriv(m as f64);
            assert!(cur < prev);
            prev = cur;
        }
    }

    #[test]
    fn exhaustive_argmax_examples() {
        let (a, b) = amps_from_asq(0.36);
        assert_eq!(optimal_partition(100, a, b).unwrap(), 36);
        let (a, b) = amps_from_asq(0.3);
        assert_eq!(optimal_partition(1000, a, b).unwrap(), 300);
    }

    #[test]
    fn symmetric_amplitudes_split_in_half() {
        let (a, b) = amps_from_asq(0.5);
        assert_eq!(optimal_partition(10, a, b).unwrap(), 5);
        assert_eq!(optimal_partition(1000, a, b).unwrap(), 500);
    }

    #[test]
    fn edge_amplitudes_bypass_the_scan() {
        assert_eq!(optimal_partition(7, 1.0, 0.0).unwrap(), 7);
        assert_eq!(optimal_partition(7, 0.0, 1.0).unwrap(), 0);
    }

    #[test]
    fn ties_break_toward_smaller_m() {
        // n = 3 with equal amplitudes: f(1) = f(2) by symmetry.
        let (a, b) = amps_from_asq(0.5);
        assert_eq!(optimal_partition(3, a, b).unwrap(), 1);
    }

    #[test]
    fn born_recovery_within_one_over_n() {
        for n in [100usize, 250, 1000] {
            for k in 1..19 {
                let asq = 0.05 * k as f64;
                let (a, b) = amps_from_asq(asq);
                let m = optimal_partition(n, a, b).unwrap();
                assert!(
                    (m as f64 / n as f64 - asq).abs() <= 1.0 / n as f64,
                    "n={n} asq={asq} m={m}"
                );
            }
        }
    }

    #[test]
    fn argmax_is_adjacent_to_the_continuous_root() {
        for n in [100usize, 333, 1000] {
            for k in 1..10 {
                let asq = 0.1 * k as f64;
                let (a, b) = amps_from_asq(asq);
                let m = optimal_partition(n, a, b).unwrap();
                assert!((m as f64 - n as f64 * asq).abs() <= 1.0);
            }
        }
    }

    #[test]
    fn equalization_at_the_optimum() {
        for n in [100usize, 400, 1600] {
            for k in [1usize, 4, 9, 13, 18] {
                let asq = 0.05 * k as f64;
                let (a, b) = amps_from_asq(asq);
                let m = optimal_partition(n, a, b).unwrap();
                let branch =
                    ml_branch_profile(&PartitionSpec::new(m, n, a, b).unwrap()).unwrap();
                let radii = branch.profile().radii();
                let max = radii.iter().cloned().fold(f64::MIN, f64::max);
                let min = radii.iter().cloned().fold(f64::MAX, f64::min);
                assert!(
                    max / min <= 1.0 + 4.0 / (n as f64).sqrt(),
                    "ratio {} at n={n}, asq={asq}",
                    max / min
                );
            }
        }
    }

    #[test]
    fn unnormalized_amplitudes_are_rejected() {
        assert!(matches!(
            optimal_partition(10, 0.9, 0.9),
            Err(Error::NotNormalized { .. })
        ));
    }
}
