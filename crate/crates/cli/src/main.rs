//! Command-line front end: one subcommand per library capability,
//! deterministic seeding, CSV/JSON emission.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage errors,
//! 3 invalid parameters, 4 output errors.

mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bornmc::grid::{count_circle_cells, GridSpec};
use bornmc::likelihood::{deviations, gaussian_width, log_likelihood_ratio, near_equal_profile};
use bornmc::mc;
use bornmc::partition::{log_partition_weight, optimal_partition, PartitionSpec};
use bornmc::pipeline::born_deviation_curve;
use bornmc::rng::DEFAULT_SEED;
use bornmc::selectivity::{
    selectivity_closed_form, selectivity_first_order, selectivity_monte_carlo, GumbelParams,
    SelectivityQuery,
};
use bornmc::state::{sample_state, RadialProfile};
use bornmc::stats::{ks_critical_one_sample, ks_statistic};
use bornmc::verify;
use bornmc::volume::{volume_closed_form, volume_monte_carlo, EquivalenceClassSpec};

use emit::{Cell, Format, Table};

#[derive(Parser)]
#[command(
    name = "bornmc",
    version,
    about = "Monte Carlo verification of squared-amplitude outcome statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Master seed; every run with the same seed and parameters emits
    /// identical bytes.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample states under the invariant measure and summarize the first
    /// squared component against its analytic law.
    Sample {
        /// Hilbert-space dimension.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Phase-equivalence class volume: Monte Carlo fraction and closed
    /// form for one radial profile.
    Volume {
        /// Squared moduli of the profile, comma-separated, summing to 1.
        #[arg(long, value_delimiter = ',', required = true)]
        profile: Vec<f64>,
        /// Equivalence margin.
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Maximum-likelihood split of n auxiliary states for a squared
    /// amplitude.
    Partition {
        #[arg(long)]
        n: usize,
        /// Squared amplitude of the L branch.
        #[arg(long)]
        asq: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Log class-volume weight of random near-equal profiles against the
    /// quadratic laws.
    Fluctuation {
        #[arg(long)]
        n: usize,
        /// Number of sampled profiles.
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Half-width of the uniform deviation draw.
        #[arg(long, default_value_t = 0.04)]
        max_delta: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Winner-margin probability: closed form, first order, and Monte
    /// Carlo.
    Selectivity {
        /// Number of competing states.
        #[arg(long)]
        n: u64,
        /// Required gap between the top two elongations.
        #[arg(long)]
        margin: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Traced-cell counts for circles on the amplitude grid.
    Grid {
        /// Cell side length.
        #[arg(long, default_value_t = 0.01)]
        d: f64,
        #[arg(long, default_value_t = 0.3)]
        r_lo: f64,
        #[arg(long, default_value_t = 0.7)]
        r_hi: f64,
        /// Number of stratified radii.
        #[arg(long, visible_alias = "trials", default_value_t = 100)]
        samples: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// End-to-end measurement: empirical outcome frequencies against the
    /// squared amplitude.
    Born {
        /// Auxiliary state count.
        #[arg(long)]
        n: usize,
        /// Single squared amplitude.
        #[arg(long, conflicts_with = "asq_grid", required_unless_present = "asq_grid")]
        asq: Option<f64>,
        /// Comma-separated squared-amplitude sweep.
        #[arg(long, value_delimiter = ',')]
        asq_grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0.5)]
        margin: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the built-in verification suite; nonzero exit if any check
    /// fails.
    Verify {
        /// Reduced trial counts, finishes within a minute.
        #[arg(long)]
        quick: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = dispatch(cli.command);
    match result {
        Ok((table, status)) => {
            let text = table.render(common.format, common.seed);
            if let Err(e) = write_output(&common.out, &text) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(4);
            }
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn dispatch(command: Command) -> (CommonArgs, Result<(Table, u8), bornmc::Error>) {
    match command {
        Command::Sample { n, trials, common } => {
            let result = cmd_sample(n, trials, common.seed);
            (common, result)
        }
        Command::Volume {
            profile,
            eps,
            trials,
            common,
        } => {
            let result = cmd_volume(&profile, eps, trials, common.seed);
            (common, result)
        }
        Command::Partition { n, asq, common } => {
            let result = cmd_partition(n, asq);
            (common, result)
        }
        Command::Fluctuation {
            n,
            trials,
            max_delta,
            common,
        } => {
            let result = cmd_fluctuation(n, trials, max_delta, common.seed);
            (common, result)
        }
        Command::Selectivity {
            n,
            margin,
            sigma,
            mu,
            trials,
            common,
        } => {
            let result = cmd_selectivity(n, margin, sigma, mu, trials, common.seed);
            (common, result)
        }
        Command::Grid {
            d,
            r_lo,
            r_hi,
            samples,
            common,
        } => {
            let result = cmd_grid(d, r_lo, r_hi, samples);
            (common, result)
        }
        Command::Born {
            n,
            asq,
            asq_grid,
            margin,
            sigma,
            mu,
            trials,
            common,
        } => {
            let grid = asq_grid.or_else(|| asq.map(|v| vec![v])).expect("clap enforces one");
            let result = cmd_born(n, &grid, margin, sigma, mu, trials, common.seed);
            (common, result)
        }
        Command::Verify { quick, common } => {
            let result = cmd_verify(quick, common.seed);
            (common, result)
        }
    }
}

fn cmd_sample(n: usize, trials: u64, seed: u64) -> Result<(Table, u8), bornmc::Error> {
    if n == 0 {
        return Err(bornmc::Error::InvalidDimension);
    }
    if trials == 0 {
        return Err(bornmc::Error::NoTrials);
    }
    let mut values = mc::collect_trials(trials, seed, |rng| {
        sample_state(n, rng).expect("n >= 1").amps()[0].norm_sqr()
    });
    let mean = mc::pairwise_sum(&values) / trials as f64;
    let std_error = if trials > 1 {
        let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
        (mc::pairwise_sum(&sq) / (trials as f64 - 1.0) / trials as f64).sqrt()
    } else {
        0.0
    };
    let (ks, ks_crit) = if n >= 2 {
        let cdf = |x: f64| 1.0 - (1.0 - x.clamp(0.0, 1.0)).powi(n as i32 - 1);
        (
            ks_statistic(&mut values, cdf),
            ks_critical_one_sample(0.01, trials as usize),
        )
    } else {
        (0.0, 0.0)
    };
    let table = Table {
        columns: vec![
            "n",
            "trials",
            "mean_first_sq",
            "std_error",
            "analytic_mean",
            "ks_stat",
            "ks_crit_01",
        ],
        rows: vec![vec![
            Cell::UInt(n as u64),
            Cell::UInt(trials),
            Cell::Float(mean),
            Cell::Float(std_error),
            Cell::Float(1.0 / n as f64),
            Cell::Float(ks),
            Cell::Float(ks_crit),
        ]],
        params: format!("command=sample n={n} trials={trials}"),
    };
    Ok((table, 0))
}

fn profile_from_squares(squares: &[f64]) -> Result<RadialProfile, bornmc::Error> {
    for &s in squares {
        if !(0.0..=1.0).contains(&s) {
            return Err(bornmc::Error::InvalidAmplitudeFraction(s));
        }
    }
    RadialProfile::new(squares.iter().map(|s| s.sqrt()).collect())
}

fn cmd_volume(
    squares: &[f64],
    eps: f64,
    trials: u64,
    seed: u64,
) -> Result<(Table, u8), bornmc::Error> {
    let profile = profile_from_squares(squares)?;
    let n = profile.dim();
    let spec = EquivalenceClassSpec::new(profile, eps)?;
    let vol = volume_monte_carlo(&spec, trials, seed)?;
    let table = Table {
        columns: vec![
            "n",
            "eps",
            "trials",
            "hits",
            "mc_fraction",
            "std_error",
            "relative_weight",
            "closed_form",
        ],
        rows: vec![vec![
            Cell::UInt(n as u64),
            Cell::Float(eps),
            Cell::UInt(trials),
            Cell::UInt(vol.hits),
            Cell::Float(vol.estimate.value),
            Cell::Float(vol.estimate.std_error),
            Cell::Float(spec.relative_weight()),
            Cell::Float(volume_closed_form(&spec)),
        ]],
        params: format!(
            "command=volume profile={} eps={eps} trials={trials}",
            squares
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join("|")
        ),
    };
    Ok((table, 0))
}

fn cmd_partition(n: usize, asq: f64) -> Result<(Table, u8), bornmc::Error> {
    if !(0.0..=1.0).contains(&asq) {
        return Err(bornmc::Error::InvalidAmplitudeFraction(asq));
    }
    let (amp_l, amp_r) = (asq.sqrt(), (1.0 - asq).sqrt());
    let m_star = optimal_partition(n, amp_l, amp_r)?;
    let weight = log_partition_weight(&PartitionSpec::new(m_star, n, amp_l, amp_r)?)?;
    let m_frac = m_star as f64 / n as f64;
    let table = Table {
        columns: vec!["n", "asq", "m_star", "m_star_frac", "disc_error", "log_weight"],
        rows: vec![vec![
            Cell::UInt(n as u64),
            Cell::Float(asq),
            Cell::UInt(m_star as u64),
            Cell::Float(m_frac),
            Cell::Float((m_frac - asq).abs()),
            Cell::Float(weight),
        ]],
        params: format!("command=partition n={n} asq={asq}"),
    };
    Ok((table, 0))
}

fn cmd_fluctuation(
    n: usize,
    trials: u64,
    max_delta: f64,
    seed: u64,
) -> Result<(Table, u8), bornmc::Error> {
    if trials == 0 {
        return Err(bornmc::Error::NoTrials);
    }
    let width = gaussian_width(n)?;
    let rows_data = mc::collect_trials(trials, seed, |rng| {
        let profile = near_equal_profile(n, max_delta, rng)?;
        let dev = deviations(&profile);
        Ok::<_, bornmc::Error>((dev.rms(), log_likelihood_ratio(&profile)))
    });
    let mut rows = Vec::with_capacity(rows_data.len());
    for (index, item) in rows_data.into_iter().enumerate() {
        let (rms, log_ratio) = item?;
        rows.push(vec![
            Cell::UInt(index as u64),
            Cell::Float(rms),
            Cell::Float(log_ratio),
            Cell::Float(-(n as f64) * rms * rms),
            Cell::Float(-1.5 * n as f64 * rms * rms),
        ]);
    }
    let table = Table {
        columns: vec![
            "index",
            "rms",
            "log_ratio",
            "quad_neg_n_rms2",
            "quad_neg_3half_n_rms2",
        ],
        rows,
        params: format!(
            "command=fluctuation n={n} trials={trials} max_delta={max_delta} gaussian_width={width}"
        ),
    };
    Ok((table, 0))
}

fn cmd_selectivity(
    n: u64,
    margin: f64,
    sigma: f64,
    mu: f64,
    trials: u64,
    seed: u64,
) -> Result<(Table, u8), bornmc::Error> {
    let params = GumbelParams::new(mu, sigma)?;
    let query = SelectivityQuery::new(n, margin, params)?;
    let est = selectivity_monte_carlo(&query, trials, seed)?;
    let table = Table {
        columns: vec![
            "n",
            "margin",
            "sigma",
            "closed_form",
            "first_order",
            "mc_value",
            "mc_std_error",
            "trials",
        ],
        rows: vec![vec![
            Cell::UInt(n),
            Cell::Float(margin),
            Cell::Float(sigma),
            Cell::Float(selectivity_closed_form(&query)),
            Cell::Float(selectivity_first_order(&query)),
            Cell::Float(est.value),
            Cell::Float(est.std_error),
            Cell::UInt(trials),
        ]],
        params: format!(
            "command=selectivity n={n} margin={margin} sigma={sigma} mu={mu} trials={trials}"
        ),
    };
    Ok((table, 0))
}

fn cmd_grid(d: f64, r_lo: f64, r_hi: f64, samples: u64) -> Result<(Table, u8), bornmc::Error> {
    let grid = GridSpec::new(d)?;
    if samples == 0 {
        return Err(bornmc::Error::NoTrials);
    }
    if !(d < r_lo && r_lo < r_hi) {
        return Err(bornmc::Error::InvalidRadiusRange { r_lo, r_hi, d });
    }
    let step = (r_hi - r_lo) / samples as f64;
    let mut rows = Vec::with_capacity(samples as usize);
    for s in 0..samples {
        let r = r_lo + (s as f64 + 0.5) * step;
        let count = count_circle_cells(r, &grid)?;
        rows.push(vec![
            Cell::Float(r),
            Cell::Float(d),
            Cell::UInt(count),
            Cell::Float(2.0 * std::f64::consts::PI * r / d),
        ]);
    }
    let table = Table {
        columns: vec!["r", "d", "count", "asymptote"],
        rows,
        params: format!("command=grid d={d} r_lo={r_lo} r_hi={r_hi} samples={samples}"),
    };
    Ok((table, 0))
}

fn cmd_born(
    n: usize,
    asq_grid: &[f64],
    margin: f64,
    sigma: f64,
    mu: f64,
    trials: u64,
    seed: u64,
) -> Result<(Table, u8), bornmc::Error> {
    let params = GumbelParams::new(mu, sigma)?;
    let rows_data = born_deviation_curve(asq_grid, n, params, margin, trials, seed)?;
    let rows = rows_data
        .iter()
        .map(|row| {
            vec![
                Cell::Float(row.amp_sq),
                Cell::UInt(row.m_star as u64),
                Cell::Float(row.m_star_frac),
                Cell::Float(row.p_l_empirical),
                Cell::Float(row.std_error),
                Cell::Float(row.selective_fraction),
                Cell::Float(row.disc_error),
            ]
        })
        .collect();
    let table = Table {
        columns: vec![
            "asq",
            "m_star",
            "m_star_frac",
            "p_l_empirical",
            "std_error",
            "selective_fraction",
            "disc_error",
        ],
        rows,
        params: format!(
            "command=born n={n} asq={} margin={margin} sigma={sigma} mu={mu} trials={trials}",
            asq_grid
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join("|")
        ),
    };
    Ok((table, 0))
}

fn cmd_verify(quick: bool, seed: u64) -> Result<(Table, u8), bornmc::Error> {
    let results = verify::run_all(seed, quick);
    let all_passed = results.iter().all(|r| r.passed);
    let rows = results
        .iter()
        .map(|r| {
            vec![
                Cell::Text(r.id.to_string()),
                Cell::Bool(r.passed),
                Cell::Text(r.detail.replace(',', ";")),
            ]
        })
        .collect();
    let table = Table {
        columns: vec!["criterion", "passed", "detail"],
        rows,
        params: format!("command=verify quick={quick}"),
    };
    Ok((table, if all_passed { 0 } else { 1 }))
}
