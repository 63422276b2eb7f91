//! End-to-end simulated measurement.
//!
//! For object amplitudes (|a|, |b|) and `n` auxiliary states, the
//! maximum-likelihood split puts the first `m*` states on the L branch.
//! Each trial draws `n` independent elongations, fires the state with the
//! largest draw, and classifies the outcome by which branch the winner
//! sits on. With the equal-amplitude branch profile all states are
//! exchangeable, so L occurs with frequency `m*/n`, which tracks `|a|^2`.

use crate::error::{Error, Result};
use crate::mc;
use crate::partition::optimal_partition;
use crate::rng::{derive_seed, TrialRng};
use crate::selectivity::{gumbel_sample, GumbelParams};
use crate::state::NORM_TOLERANCE;

/// Full description of a simulated measurement run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementConfig {
    pub amp_l: f64,
    pub amp_r: f64,
    pub n: usize,
    pub params: GumbelParams,
    /// Selectivity margin used for the per-trial `selective` flag.
    pub margin: f64,
    pub trials: u64,
    pub seed: u64,
}

impl MeasurementConfig {
    pub fn new(
        amp_l: f64,
        amp_r: f64,
        n: usize,
        params: GumbelParams,
        margin: f64,
        trials: u64,
        seed: u64,
    ) -> Result<Self> {
        if amp_l < 0.0 || amp_r < 0.0 {
            return Err(Error::NegativeRadius(amp_l.min(amp_r)));
        }
        let norm_sq = amp_l * amp_l + amp_r * amp_r;
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq });
        }
        if n < 2 {
            return Err(Error::TooFewStates(n as u64));
        }
        if margin.is_nan() || margin < 0.0 {
            return Err(Error::InvalidMargin(margin));
        }
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(Self {
            amp_l,
            amp_r,
            n,
            params,
            margin,
            trials,
            seed,
        })
    }

    /// The maximum-likelihood split for these amplitudes.
    pub fn optimal_split(&self) -> Result<usize> {
        optimal_partition(self.n, self.amp_l, self.amp_r)
    }
}

/// Which branch the winning auxiliary state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    L,
    R,
}

/// Record of a single trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    /// 1-based index of the winning state.
    pub winner_index: usize,
    pub outcome: Outcome,
    /// Gap between the largest and second-largest elongation.
    pub gap: f64,
    /// Whether the gap clears the configured margin.
    pub selective: bool,
}

/// Aggregated outcome frequencies of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BornReport {
    pub p_l_empirical: f64,
    pub std_error: f64,
    pub selective_fraction: f64,
    pub m_star: usize,
    pub trials: u64,
    pub seed: u64,
}

/// Runs one trial: `n` elongation draws, winner by largest draw, outcome L
/// exactly when the winner index is at most `m_star`.
pub fn run_trial(
    config: &MeasurementConfig,
    m_star: usize,
    rng: &mut TrialRng,
) -> TrialOutcome {
    let mut best = f64::NEG_INFINITY;
    let mut second = f64::NEG_INFINITY;
    let mut best_idx = 0usize;
    for i in 0..config.n {
        let phi = gumbel_sample(&config.params, rng);
        if phi > best {
            second = best;
            best = phi;
            best_idx = i;
        } else if phi > second {
            second = phi;
        }
    }
    let winner_index = best_idx + 1;
    let gap = best - second;
    TrialOutcome {
        winner_index,
        outcome: if winner_index <= m_star {
            Outcome::L
        } else {
            Outcome::R
        },
        gap,
        selective: gap > config.margin,
    }
}

/// Runs all trials with per-trial substreams and aggregates the outcome
/// frequencies. Identical configuration and seed give a bit-identical
/// report regardless of worker count.
pub fn run_measurement(config: &MeasurementConfig) -> Result<BornReport> {
    let m_star = config.optimal_split()?;
    let (l_hits, selective_hits) = mc::count_pair(config.trials, config.seed, |rng| {
        let out = run_trial(config, m_star, rng);
        (out.outcome == Outcome::L, out.selective)
    });
    Ok(report_from_counts(config, m_star, l_hits, selective_hits))
}

/// Sequential variant of [`run_measurement`] with identical output; kept
/// public for throughput comparison.
pub fn run_measurement_seq(config: &MeasurementConfig) -> Result<BornReport> {
    let m_star = config.optimal_split()?;
    let (l_hits, selective_hits) =
        mc::count_pair_seq(config.trials, config.seed, |rng| {
            let out = run_trial(config, m_star, rng);
            (out.outcome == Outcome::L, out.selective)
        });
    Ok(report_from_counts(config, m_star, l_hits, selective_hits))
}

fn report_from_counts(
    config: &MeasurementConfig,
    m_star: usize,
    l_hits: u64,
    selective_hits: u64,
) -> BornReport {
    let trials = config.trials as f64;
    let p = l_hits as f64 / trials;
    BornReport {
        p_l_empirical: p,
        std_error: (p * (1.0 - p) / trials).sqrt(),
        selective_fraction: selective_hits as f64 / trials,
        m_star,
        trials: config.trials,
        seed: config.seed,
    }
}

/// One row of a squared-amplitude sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BornCurveRow {
    pub amp_sq: f64,
    pub m_star: usize,
    /// The discretized outcome probability `m*/n`.
    pub m_star_frac: f64,
    pub p_l_empirical: f64,
    pub std_error: f64,
    pub selective_fraction: f64,
    /// Discretization error `|m*/n - amp_sq|`, at most `1/n` away from the
    /// amplitude rule.
    pub disc_error: f64,
}

/// Sweeps `run_measurement` over a grid of `|a|^2` values. Each grid point
/// runs under its own derived master seed.
pub fn born_deviation_curve(
    amp_sq_grid: &[f64],
    n: usize,
    params: GumbelParams,
    margin: f64,
    trials: u64,
    seed: u64,
) -> Result<Vec<BornCurveRow>> {
    let mut rows = Vec::with_capacity(amp_sq_grid.len());
    for (i, &amp_sq) in amp_sq_grid.iter().enumerate() {
        if !(0.0..=1.0).contains(&amp_sq) {
            return Err(Error::InvalidAmplitudeFraction(amp_sq));
        }
        let config = MeasurementConfig::new(
            amp_sq.sqrt(),
            (1.0 - amp_sq).sqrt(),
            n,
            params,
            margin,
            trials,
            derive_seed(seed, i as u64),
        )?;
        let report = run_measurement(&config)?;
        let m_star_frac = report.m_star as f64 / n as f64;
        rows.push(BornCurveRow {
            amp_sq,
            m_star: report.m_star,
            m_star_frac,
            p_l_empirical: report.p_l_empirical,
            std_error: report.std_error,
            selective_fraction: report.selective_fraction,
            disc_error: (m_star_frac - amp_sq).abs(),
        });
    }
    Ok(rows)
}
