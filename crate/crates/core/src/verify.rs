//! Built-in verification suite: every release gate as an executable check.
//!
//! Each criterion runs a fixed statistical or algebraic test at pinned
//! tolerances and reports one row. Rows contain only deterministic
//! quantities (never wall-clock), so rendered output is byte-identical
//! across runs and worker counts; runtime budgets enter the pass flag
//! only.

use std::time::Instant;

use crate::grid::{self, GridSpec};
use crate::likelihood;
use crate::mc;
use crate::partition;
use crate::pipeline::{self, MeasurementConfig};
use crate::rng::{derive_seed, Substreams};
use crate::selectivity::{self, GumbelParams, SelectivityQuery};
use crate::state::{radial_profile, sample_state, RadialProfile};
use crate::volume::{volume_monte_carlo, EquivalenceClassSpec};

/// Result of one verification check.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: &'static str,
    pub passed: bool,
    /// Deterministic measured quantities, space-separated, comma-free.
    pub detail: String,
}

/// Runs the whole suite. `quick` shrinks trial counts so the suite
/// finishes within a minute even on one core; tolerances scale with the
/// statistical errors, so the checks are equally strict.
pub fn run_all(seed: u64, quick: bool) -> Vec<CriterionResult> {
    let mut results = run_core(seed, quick);
    results.push(criterion_reproducibility(seed));
    results
}

/// Criteria 1-9; criterion 10 re-runs these to compare rendered bytes.
fn run_core(seed: u64, quick: bool) -> Vec<CriterionResult> {
    vec![
        criterion_volume_ratio(seed, quick),
        criterion_equal_amplitude_maximizer(seed, quick),
        criterion_fluctuation_width(seed, quick),
        criterion_born_partition(),
        criterion_selectivity_oracle(seed, quick),
        criterion_tanh_identity(),
        criterion_factor_two_bound(),
        criterion_grid_asymptote(seed, quick),
        criterion_born_end_to_end(seed, quick),
    ]
}

/// Renders results as CSV with a fixed schema.
pub fn render_csv(results: &[CriterionResult]) -> String {
    let mut out = String::from("criterion,passed,detail\n");
    for r in results {
        debug_assert!(!r.detail.contains(','));
        out.push_str(&format!("{},{},{}\n", r.id, r.passed, r.detail));
    }
    out
}

/// Ratio of Monte Carlo class volumes against the closed-form weight
/// ratio, where the overall constant cancels: n=3, eps=0.05, equal profile
/// vs (sqrt 0.8, sqrt 0.1, sqrt 0.1), agreement within 3 combined standard
/// errors.
pub fn criterion_volume_ratio(seed: u64, quick: bool) -> CriterionResult {
    let start = Instant::now();
    let trials = if quick { 100_000 } else { 1_000_000 };
    let eps = 0.05;
    let p1 = likelihood::ml_profile(3).expect("n >= 1");
    let p2 = RadialProfile::new(vec![0.8_f64.sqrt(), 0.1_f64.sqrt(), 0.1_f64.sqrt()])
        .expect("unit profile");
    let s1 = EquivalenceClassSpec::new(p1, eps).expect("valid eps");
    let s2 = EquivalenceClassSpec::new(p2, eps).expect("valid eps");
    let v1 = volume_monte_carlo(&s1, trials, derive_seed(seed, 0)).expect("trials ok");
    let v2 = volume_monte_carlo(&s2, trials, derive_seed(seed, 1)).expect("trials ok");

    let cf_ratio = s1.relative_weight() / s2.relative_weight();
    let hit = !v1.never_hit() && !v2.never_hit();
    let (mc_ratio, z) = if hit {
        let ratio = v1.estimate.value / v2.estimate.value;
        let rel1 = v1.estimate.std_error / v1.estimate.value;
        let rel2 = v2.estimate.std_error / v2.estimate.value;
        let sigma = ratio * (rel1 * rel1 + rel2 * rel2).sqrt();
        (ratio, (ratio - cf_ratio).abs() / sigma)
    } else {
        (f64::NAN, f64::INFINITY)
    };
    let within_budget = start.elapsed().as_secs_f64() < 30.0;
    CriterionResult {
        id: "volume-ratio-law",
        passed: hit && z <= 3.0 && within_budget,
        detail: format!(
            "mc_ratio={mc_ratio:.4} cf_ratio={cf_ratio:.4} z={z:.2} hits={}/{} trials={trials}",
            v1.hits, v2.hits
        ),
    }
}

/// The equal-amplitude profile must beat every sampled random unit profile
/// in class-volume weight, for n in {2, 5, 20}; zero violations.
pub fn criterion_equal_amplitude_maximizer(seed: u64, quick: bool) -> CriterionResult {
    let per_n = if quick { 10_000 } else { 100_000 };
    let mut total = 0u64;
    let mut violations = 0u64;
    for (k, &n) in [2usize, 5, 20].iter().enumerate() {
        violations += mc::count_hits(per_n, derive_seed(seed, 10 + k as u64), |rng| {
            let profile = radial_profile(&sample_state(n, rng).expect("n >= 1"));
            likelihood::log_likelihood_ratio(&profile) >= 0.0
        });
        total += per_n;
    }
    CriterionResult {
        id: "equal-amplitude-maximizer",
        passed: violations == 0,
        detail: format!("violations={violations}/{total} dims=2|5|20"),
    }
}

/// Second-order law for the log class-volume weight of near-equal
/// profiles: |log ratio + (3/2) n rms^2| <= 0.5 n max|delta|^3 for
/// max|delta| <= 0.05, n in {10, 100}; zero violations.
pub fn criterion_fluctuation_width(seed: u64, quick: bool) -> CriterionResult {
    let per_n = if quick { 1_000 } else { 10_000 };
    let mut total = 0u64;
    let mut violations = 0u64;
    let mut worst_excess = f64::NEG_INFINITY;
    for (k, &n) in [10usize, 100].iter().enumerate() {
        let excesses = mc::collect_trials(per_n, derive_seed(seed, 20 + k as u64), |rng| {
            let profile =
                likelihood::near_equal_profile(n, 0.045, rng).expect("valid draw");
            let dev = likelihood::deviations(&profile);
            debug_assert!(dev.max_abs() <= 0.05);
            let llr = likelihood::log_likelihood_ratio(&profile);
            let residual = (llr + 1.5 * n as f64 * dev.rms() * dev.rms()).abs();
            residual - 0.5 * n as f64 * dev.max_abs().powi(3)
        });
        for &e in &excesses {
            if e > 0.0 {
                violations += 1;
            }
            worst_excess = worst_excess.max(e);
        }
        total += per_n;
    }
    CriterionResult {
        id: "fluctuation-width-expansion",
        passed: violations == 0,
        detail: format!(
            "violations={violations}/{total} worst_excess={worst_excess:.6} dims=10|100"
        ),
    }
}

/// The exhaustive-argmax split must equal round(n |a|^2) and an
/// independent scan, n=1000, |a|^2 in {0.1, ..., 0.9}.
pub fn criterion_born_partition() -> CriterionResult {
    let n = 1000usize;
    let mut mismatches = 0u32;
    let mut detail_parts = Vec::new();
    for k in 1..=9 {
        let asq = 0.1 * k as f64;
        let (a, b) = (asq.sqrt(), (1.0 - asq).sqrt());
        let m = partition::optimal_partition(n, a, b).expect("valid amplitudes");

        // Independent scan over all interior splits.
        let weight = |m: usize| -> f64 {
            m as f64 * (a / (m as f64).sqrt()).ln()
                + (n - m) as f64 * (b / ((n - m) as f64).sqrt()).ln()
        };
        let mut scan_best = 1;
        for cand in 2..n {
            if weight(cand) > weight(scan_best) {
                scan_best = cand;
            }
        }

        let rounded = (n as f64 * asq).round() as usize;
        if m != rounded || m != scan_best {
            mismatches += 1;
            detail_parts.push(format!("asq={asq:.1}:m={m}:round={rounded}:scan={scan_best}"));
        }
    }
    CriterionResult {
        id: "born-partition-argmax",
        passed: mismatches == 0,
        detail: if mismatches == 0 {
            "mismatches=0/9 n=1000".to_string()
        } else {
            format!("mismatches={mismatches}/9 {}", detail_parts.join(" "))
        },
    }
}

/// Monte Carlo winner-margin probability vs the closed form, within
/// 3 standard errors on the grid n in {2, 5, 100} x a/sigma in
/// {0.1, 1, 3}.
pub fn criterion_selectivity_oracle(seed: u64, quick: bool) -> CriterionResult {
    let start = Instant::now();
    let trials = if quick { 100_000 } else { 1_000_000 };
    let params = GumbelParams::new(0.0, 1.0).expect("valid scale");
    let mut worst_z = 0.0_f64;
    let mut failures = 0u32;
    let mut point = 0u64;
    for &n in &[2u64, 5, 100] {
        for &x in &[0.1, 1.0, 3.0] {
            let q = SelectivityQuery::new(n, x, params).expect("valid query");
            let est =
                selectivity::selectivity_monte_carlo(&q, trials, derive_seed(seed, 30 + point))
                    .expect("trials ok");
            let exact = selectivity::selectivity_closed_form(&q);
            let z = (est.value - exact).abs() / est.std_error;
            worst_z = worst_z.max(z);
            if z > 3.0 {
                failures += 1;
            }
            point += 1;
        }
    }
    let within_budget = start.elapsed().as_secs_f64() < 120.0;
    CriterionResult {
        id: "selectivity-oracle-agreement",
        passed: failures == 0 && within_budget,
        detail: format!("failures={failures}/9 worst_z={worst_z:.2} trials={trials}"),
    }
}

/// Exact two-state identity: p(2, a) = 1 - tanh(a / 2 sigma) to 1e-12 on
/// 100 points a/sigma in [0, 10].
pub fn criterion_tanh_identity() -> CriterionResult {
    let params = GumbelParams::new(0.0, 1.0).expect("valid scale");
    let mut worst = 0.0_f64;
    for i in 0..100 {
        let x = 10.0 * i as f64 / 99.0;
        let q = SelectivityQuery::new(2, x, params).expect("valid query");
        let p = selectivity::selectivity_closed_form(&q);
        let identity = 1.0 - (x / 2.0).tanh();
        worst = worst.max((p - identity).abs());
    }
    CriterionResult {
        id: "two-state-tanh-identity",
        passed: worst <= 1e-12,
        detail: format!("worst_abs_diff={worst:.2e} points=100"),
    }
}

/// Fault-probability bound: 1 - p(n, a) <= 2 (1 - p(2, a)) for every n and
/// margin, including the n -> infinity limit.
pub fn criterion_factor_two_bound() -> CriterionResult {
    let params = GumbelParams::new(0.0, 1.0).expect("valid scale");
    // Log-spaced n from 2 to 10^6.
    let mut ns = vec![2u64];
    let mut x = 2.0_f64;
    while x < 1e6 {
        x *= 1.4;
        let n = x.round() as u64;
        if n > *ns.last().expect("nonempty") {
            ns.push(n.min(1_000_000));
        }
    }
    let mut violations = 0u64;
    let mut worst_margin = f64::NEG_INFINITY;
    let mut checks = 0u64;
    for i in 1..=200 {
        let a = 10.0 * i as f64 / 200.0;
        let q2 = SelectivityQuery::new(2, a, params).expect("valid query");
        let bound = 2.0 * (1.0 - selectivity::selectivity_closed_form(&q2));
        for &n in &ns {
            let q = SelectivityQuery::new(n, a, params).expect("valid query");
            let fault = 1.0 - selectivity::selectivity_closed_form(&q);
            worst_margin = worst_margin.max(fault - bound);
            if fault > bound + 1e-12 {
                violations += 1;
            }
            checks += 1;
        }
        // Limit of the fault probability as n grows without bound.
        let limit_fault = 1.0 - (-a).exp();
        worst_margin = worst_margin.max(limit_fault - bound);
        if limit_fault > bound + 1e-12 {
            violations += 1;
        }
        checks += 1;
    }
    CriterionResult {
        id: "selectivity-factor-two-bound",
        passed: violations == 0,
        detail: format!("violations={violations}/{checks} worst_margin={worst_margin:.2e}"),
    }
}

/// Traced-cell statistics: the radius-averaged count over [0.3, 0.7] at
/// d = 0.01 lands within 2% of 2 pi rbar / d, and the windowed counter
/// matches a brute-force scan exactly on random (r, d) pairs.
pub fn criterion_grid_asymptote(seed: u64, quick: bool) -> CriterionResult {
    let samples = if quick { 200 } else { 1_000 };
    let pairs = if quick { 10 } else { 50 };
    let grid = GridSpec::new(0.01).expect("valid cell side");
    let mean = grid::mean_circle_cells(0.3, 0.7, samples, &grid).expect("valid range");
    let normalized = mean * grid.cell_side() / (2.0 * std::f64::consts::PI * 0.5);

    let mut rng = Substreams::new(derive_seed(seed, 40)).stream(0);
    let mut exact_mismatches = 0u32;
    for _ in 0..pairs {
        use rand::Rng;
        let d: f64 = rng.random_range(0.004..0.04);
        let r: f64 = rng.random_range((3.0 * d).max(0.15)..0.9);
        let g = GridSpec::new(d).expect("valid cell side");
        let fast = grid::count_circle_cells(r, &g).expect("r > d");
        if fast != brute_force_count(r, &g) {
            exact_mismatches += 1;
        }
    }
    let in_window = (0.98..=1.02).contains(&normalized);
    CriterionResult {
        id: "grid-cell-asymptote",
        passed: in_window && exact_mismatches == 0,
        detail: format!(
            "normalized_mean={normalized:.4} samples={samples} exact_mismatches={exact_mismatches}/{pairs}"
        ),
    }
}

/// Independent scan of every cell in the bounding box; the enumeration
/// oracle for the windowed counter.
pub fn brute_force_count(r: f64, g: &GridSpec) -> u64 {
    let span = ((r + g.cell_side()) / g.cell_side()).ceil() as i64 + 2;
    let mut count = 0;
    for i in -span..=span {
        for j in -span..=span {
            if grid::cell_is_traced(i, j, r, g) {
                count += 1;
            }
        }
    }
    count
}

/// End-to-end outcome frequencies: p_L within 3 standard errors of
/// |a|^2 = 0.3 at n = 1000, and the two-state control stuck on
/// {0, 1/2, 1}.
pub fn criterion_born_end_to_end(seed: u64, quick: bool) -> CriterionResult {
    let trials = if quick { 10_000 } else { 100_000 };
    let params = GumbelParams::new(0.0, 1.0).expect("valid scale");
    let asq: f64 = 0.3;
    let config = MeasurementConfig::new(
        asq.sqrt(),
        (1.0 - asq).sqrt(),
        1000,
        params,
        0.5,
        trials,
        derive_seed(seed, 50),
    )
    .expect("valid config");
    let report = pipeline::run_measurement(&config).expect("valid config");
    let z = (report.p_l_empirical - asq).abs() / report.std_error;

    let grid_vals: Vec<f64> = (0..=10).map(|k| 0.1 * k as f64).collect();
    let control = pipeline::born_deviation_curve(
        &grid_vals,
        2,
        params,
        0.5,
        2_000,
        derive_seed(seed, 51),
    )
    .expect("valid sweep");
    let control_ok = control
        .iter()
        .all(|row| [0.0, 0.5, 1.0].contains(&row.m_star_frac));

    CriterionResult {
        id: "born-frequency-endtoend",
        passed: z <= 3.0 && control_ok,
        detail: format!(
            "p_l={:.5} target=0.3 stderr={:.5} z={z:.2} m_star={} two_state_ok={control_ok}",
            report.p_l_empirical, report.std_error, report.m_star
        ),
    }
}

/// Rendered rows must be byte-identical across repeated runs and across
/// worker counts (checked on the quick subset).
pub fn criterion_reproducibility(seed: u64) -> CriterionResult {
    let first = render_csv(&run_core(seed, true));
    let second = render_csv(&run_core(seed, true));
    let runs_equal = first == second;

    #[cfg(feature = "parallel")]
    let pools_equal = {
        let render_in_pool = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("pool");
            pool.install(|| render_csv(&run_core(seed, true)))
        };
        render_in_pool(1) == render_in_pool(2) && render_in_pool(2) == first
    };
    #[cfg(not(feature = "parallel"))]
    let pools_equal = true;

    CriterionResult {
        id: "verify-reproducibility",
        passed: runs_equal && pools_equal,
        detail: format!(
            "runs_equal={runs_equal} pools_equal={pools_equal} bytes={} mode=quick",
            first.len()
        ),
    }
}
