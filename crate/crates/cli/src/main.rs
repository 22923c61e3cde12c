//! `wden` — weighted-density estimation experiments.
//!
//! Subcommands map onto the standard experiment set: `estimate` (one-sample
//! decomposition panels), `simulate` (replicated MISE table cells),
//! `sweep-kappa` (risk vs threshold level), `sweep-p` (risk vs exponent),
//! `kernel-bandwidth` (LSCV and MISE curves vs bandwidth) and `compare`
//! (pointwise envelopes of both estimators). Every command writes CSV with
//! a header row and prints a one-line summary; byte-identical reruns are
//! guaranteed for identical command lines.

mod csv;
mod svg;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use csv::{fmt, CsvFile};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use wden_core::error::Error as CoreError;
use wden_core::estimator::{estimate_density, EstimatorConfig, KappaMode};
use wden_core::kernel::{kernel_density_on_grid, select_h_lscv};
use wden_core::numeric::quantile_sorted;
use wden_core::risk::{
    build_kappa_grid, h_mise_scan, kappa_sweep, mise_study, p_sweep, replication_data,
    true_g_grid, ExperimentConfig,
};
use wden_core::stream::stream;
use wden_core::testbed::{sample_model, MixtureModel, NSpec};
use wden_core::weights::{plug_in, EmpiricalCdf};
use wden_core::WaveletFilter;

#[derive(Parser)]
#[command(
    name = "wden",
    version,
    about = "Weighted-density estimation experiments (wavelet block thresholding vs kernel baseline)",
    after_help = "Environment:\n  WDEN_THREADS  cap the replication thread pool\n  RUST_LOG      logging level (e.g. debug)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit one sample; emit the estimate decomposition panels
    #[command(after_help = "CSV columns: x, f_hat, F_hat, w_of_F_hat, g_hat, f_true, g_true")]
    Estimate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Replicated MISE comparison of block, term-by-term and kernel
    #[command(after_help = "CSV columns: model, weight, param, n, method, reps, mise_x1000, seed")]
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Replication count
        #[arg(long)]
        reps: Option<u32>,
    },
    /// Mean L2 risk of the block estimator along a threshold grid
    #[command(name = "sweep-kappa", after_help = "CSV columns: model, kappa, risk_l2, is_universal\nThe is_universal=1 row marks the mean universal threshold; its risk is interpolated from the curve.")]
    SweepKappa {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        reps: Option<u32>,
        /// Number of grid points spanning [0, 4 x universal kappa]
        #[arg(long, default_value_t = 13)]
        kappa_points: usize,
    },
    /// Mean L_p risk of block and term-by-term along an exponent grid
    #[command(name = "sweep-p", after_help = "CSV columns: model, p, method, risk_lp")]
    SweepP {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        reps: Option<u32>,
        /// Comma-separated exponents in [1, 4]
        #[arg(long, default_value = "1,1.5,2,2.5,3")]
        p_grid: String,
    },
    /// LSCV score and Monte Carlo MISE along the bandwidth scan
    #[command(name = "kernel-bandwidth", after_help = "CSV columns: model, h, lscv, is_lscv_argmin, mise, is_mise_argmin, h_rot")]
    KernelBandwidth {
        #[command(flatten)]
        common: CommonArgs,
        /// Replications for the MISE curve
        #[arg(long)]
        reps: Option<u32>,
    },
    /// Pointwise envelopes of both weighted estimators over replications
    #[command(after_help = "CSV columns: model, x, g_true, block_mean, block_p05, block_p95, kernel_mean, kernel_p05, kernel_p95")]
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        reps: Option<u32>,
    },
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Test density: uniform | separated-bimodal | kurtotic | strongly-skewed
    #[arg(long)]
    model: Option<String>,
    /// Count law as family:param (degenerate:2, geometric:0.9, poisson-plus-one:1)
    #[arg(long = "N")]
    n_spec: Option<String>,
    /// Sample size
    #[arg(long)]
    n: Option<usize>,
    /// Master seed; echoed in the summary and the simulate CSV
    #[arg(long)]
    seed: Option<u64>,
    /// Risk exponent p >= 1
    #[arg(long)]
    p: Option<f64>,
    /// Evaluation grid size T (power of two >= 16)
    #[arg(long = "T")]
    grid_size: Option<usize>,
    /// Primary resolution level
    #[arg(long)]
    j1: Option<usize>,
    /// Wavelet filter (haar, db2..db10, sym4..sym10)
    #[arg(long)]
    wavelet: Option<String>,
    /// Half support b of the evaluation window
    #[arg(long)]
    b: Option<f64>,
    /// Fixed threshold level; omit for the universal rule
    #[arg(long)]
    kappa: Option<f64>,
    /// Cross-validation folds for bandwidth selection
    #[arg(long)]
    folds: Option<usize>,
    /// Output CSV path (default: <command>.csv)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write SVG line plots next to the CSV
    #[arg(long)]
    svg: bool,
    /// TOML file supplying defaults for the flags above
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Flags in the optional TOML config; command-line flags win over these,
/// and these win over built-in defaults.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileDefaults {
    model: Option<String>,
    #[serde(rename = "N")]
    n_spec: Option<String>,
    n: Option<usize>,
    seed: Option<u64>,
    p: Option<f64>,
    #[serde(rename = "T")]
    grid_size: Option<usize>,
    j1: Option<usize>,
    wavelet: Option<String>,
    b: Option<f64>,
    kappa: Option<f64>,
    folds: Option<usize>,
    reps: Option<u32>,
}

struct Resolved {
    model: MixtureModel,
    nspec: NSpec,
    n: usize,
    seed: u64,
    folds: usize,
    reps: u32,
    estimator: EstimatorConfig,
    out: PathBuf,
    svg: bool,
}

enum CliError {
    Core(CoreError),
    Io(std::io::Error),
    Config(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_configuration() => 1,
            CliError::Config(_) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Config(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn resolve(common: &CommonArgs, reps_flag: Option<u32>, default_reps: u32, default_out: &str) -> Result<Resolved, CliError> {
    let file: FileDefaults = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        None => FileDefaults::default(),
    };

    let model_name = common
        .model
        .clone()
        .or(file.model)
        .ok_or_else(|| CliError::Config("missing required flag --model".into()))?;
    let model = MixtureModel::new(&model_name)?;
    let nspec_text = common
        .n_spec
        .clone()
        .or(file.n_spec)
        .unwrap_or_else(|| "degenerate:2".to_string());
    let nspec = NSpec::parse(&nspec_text)?;

    let grid_size = common.grid_size.or(file.grid_size).unwrap_or(512);
    if !grid_size.is_power_of_two() || grid_size < 16 {
        return Err(CliError::Core(CoreError::BadParameter(format!(
            "grid size T must be a power of two >= 16, got {grid_size}"
        ))));
    }
    let wavelet = common
        .wavelet
        .clone()
        .or(file.wavelet)
        .unwrap_or_else(|| "sym6".to_string());
    let estimator = EstimatorConfig {
        p: common.p.or(file.p).unwrap_or(2.0),
        grid_levels: grid_size.trailing_zeros(),
        half_support: common.b.or(file.b).unwrap_or(4.0),
        filter: WaveletFilter::new(&wavelet)?,
        coarse_level_override: Some(common.j1.or(file.j1).unwrap_or(3)),
        kappa_mode: match common.kappa.or(file.kappa) {
            Some(v) => KappaMode::Fixed(v),
            None => KappaMode::Universal,
        },
        ..EstimatorConfig::default()
    };
    estimator.validate()?;

    Ok(Resolved {
        model,
        nspec,
        n: common.n.or(file.n).unwrap_or(1000),
        seed: common.seed.or(file.seed).unwrap_or(0),
        folds: common.folds.or(file.folds).unwrap_or(10),
        reps: reps_flag.or(file.reps).unwrap_or(default_reps),
        estimator,
        out: common.out.clone().unwrap_or_else(|| PathBuf::from(default_out)),
        svg: common.svg,
    })
}

fn experiment(r: &Resolved) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(r.model.clone(), r.nspec, r.n, r.reps, r.seed);
    cfg.folds = r.folds;
    cfg.estimator = r.estimator.clone();
    cfg
}

fn main() -> ExitCode {
    env_logger::init();
    if let Ok(threads) = std::env::var("WDEN_THREADS") {
        match threads.parse::<usize>() {
            Ok(t) if t >= 1 => {
                wden_core::par::set_thread_cap(t);
            }
            _ => {
                eprintln!("warning: ignoring invalid WDEN_THREADS value `{threads}`");
            }
        }
    }

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if err.exit_code() == 1 {
                let mut cmd = Cli::command();
                eprintln!("\n{}", cmd.render_usage());
            }
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Estimate { common } => cmd_estimate(&common),
        Command::Simulate { common, reps } => cmd_simulate(&common, reps),
        Command::SweepKappa { common, reps, kappa_points } => {
            cmd_sweep_kappa(&common, reps, kappa_points)
        }
        Command::SweepP { common, reps, p_grid } => cmd_sweep_p(&common, reps, &p_grid),
        Command::KernelBandwidth { common, reps } => cmd_kernel_bandwidth(&common, reps),
        Command::Compare { common, reps } => cmd_compare(&common, reps),
    }
}

fn svg_path(out: &Path, suffix: &str) -> PathBuf {
    out.with_extension(format!("{suffix}svg"))
}

fn cmd_estimate(common: &CommonArgs) -> Result<(), CliError> {
    let r = resolve(common, None, 2, "estimate.csv")?;
    let spec = r.nspec.weight_spec()?;
    let mut rng = stream(r.seed, 0);
    let sample = sample_model(&r.model, r.n, &mut rng);

    // plotting defaults: clip negatives, keep raw mass otherwise
    let mut cfg = r.estimator.clone();
    cfg.clip_nonnegative = true;
    let f_hat = estimate_density(&sample, &cfg)?;
    let cdf = EmpiricalCdf::new(&sample)?;
    let g_hat = plug_in(&f_hat, &cdf, &spec)?;
    let grid = *f_hat.grid();

    let mut out = CsvFile::create(&r.out, &["x", "f_hat", "F_hat", "w_of_F_hat", "g_hat", "f_true", "g_true"])?;
    for k in 0..grid.len() {
        let x = grid.point(k);
        let f_cdf = cdf.eval(x);
        out.row(&[
            fmt(x),
            fmt(f_hat.values()[k]),
            fmt(f_cdf),
            fmt(spec.eval(f_cdf)?),
            fmt(g_hat.values()[k]),
            fmt(r.model.pdf(x)),
            fmt(wden_core::testbed::true_g(&r.model, &spec, x)?),
        ])?;
    }
    let rows = out.finish()?;
    let scales = f_hat.scales().expect("wavelet estimate");
    println!(
        "estimate: model={} N={} n={} seed={} kappa={:.4} -> {} ({rows} rows)",
        r.model.label(),
        r.nspec.label(),
        r.n,
        r.seed,
        scales.kappa,
        r.out.display()
    );

    if r.svg {
        let xs: Vec<f64> = grid.points().collect();
        let series = |vals: &[f64]| xs.iter().copied().zip(vals.iter().copied()).collect();
        let truth_f: Vec<f64> = xs.iter().map(|&x| r.model.pdf(x)).collect();
        let truth_g: Vec<f64> = xs
            .iter()
            .map(|&x| wden_core::testbed::true_g(&r.model, &spec, x))
            .collect::<Result<_, _>>()?;
        let path = svg_path(&r.out, "");
        svg::write_plot(
            &path,
            &format!("density estimate: {} / {}", r.model.label(), r.nspec.label()),
            &[
                svg::Series { label: "f_true", points: series(&truth_f) },
                svg::Series { label: "f_hat", points: series(f_hat.values()) },
                svg::Series { label: "g_true", points: series(&truth_g) },
                svg::Series { label: "g_hat", points: series(g_hat.values()) },
            ],
        )?;
        println!("estimate: plot -> {}", path.display());
    }
    Ok(())
}

fn cmd_simulate(common: &CommonArgs, reps: Option<u32>) -> Result<(), CliError> {
    let r = resolve(common, reps, 50, "simulate.csv")?;
    let cfg = experiment(&r);
    let study = mise_study(&cfg)?;

    let mut out = CsvFile::create(
        &r.out,
        &["model", "weight", "param", "n", "method", "reps", "mise_x1000", "seed"],
    )?;
    for report in [&study.block, &study.termwise, &study.kernel] {
        out.row(&[
            report.model.clone(),
            r.nspec.weight_spec()?.family().to_string(),
            r.nspec.weight_spec()?.param_string(),
            format!("{}", report.n),
            report.method.as_str().to_string(),
            format!("{}", r.reps),
            fmt(1000.0 * report.mean_risk),
            format!("{}", report.seed),
        ])?;
    }
    let rows = out.finish()?;
    println!(
        "simulate: model={} N={} n={} reps={} seed={} 1000xMISE block={:.3} termwise={:.3} kernel={:.3} -> {} ({rows} rows)",
        r.model.label(),
        r.nspec.label(),
        r.n,
        r.reps,
        r.seed,
        1000.0 * study.block.mean_risk,
        1000.0 * study.termwise.mean_risk,
        1000.0 * study.kernel.mean_risk,
        r.out.display()
    );

    if r.svg {
        let series = |rep: &wden_core::RiskReport| {
            rep.per_replication
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as f64, 1000.0 * v))
                .collect()
        };
        let path = svg_path(&r.out, "");
        svg::write_plot(
            &path,
            &format!("per-replication 1000xR2: {} / {}", r.model.label(), r.nspec.label()),
            &[
                svg::Series { label: "block", points: series(&study.block) },
                svg::Series { label: "termwise", points: series(&study.termwise) },
                svg::Series { label: "kernel", points: series(&study.kernel) },
            ],
        )?;
        println!("simulate: plot -> {}", path.display());
    }
    Ok(())
}

fn cmd_sweep_kappa(common: &CommonArgs, reps: Option<u32>, kappa_points: usize) -> Result<(), CliError> {
    let r = resolve(common, reps, 10, "sweep_kappa.csv")?;
    let cfg = experiment(&r);
    let grid = build_kappa_grid(&cfg, kappa_points)?;
    let sweep = kappa_sweep(&cfg, &grid)?;

    let mut out = CsvFile::create(&r.out, &["model", "kappa", "risk_l2", "is_universal"])?;
    for &(kappa, risk) in &sweep.points {
        out.row(&[r.model.label().to_string(), fmt(kappa), fmt(risk), "0".into()])?;
    }
    // marker row at the mean universal level, risk interpolated on the curve
    let marker = interpolate(&sweep.points, sweep.universal_kappa);
    out.row(&[
        r.model.label().to_string(),
        fmt(sweep.universal_kappa),
        fmt(marker),
        "1".into(),
    ])?;
    let rows = out.finish()?;
    println!(
        "sweep-kappa: model={} N={} n={} reps={} seed={} argmin={:.4} universal={:.4} -> {} ({rows} rows)",
        r.model.label(),
        r.nspec.label(),
        r.n,
        r.reps,
        r.seed,
        sweep.argmin_kappa,
        sweep.universal_kappa,
        r.out.display()
    );

    if r.svg {
        let path = svg_path(&r.out, "");
        let lo = sweep.points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let hi = sweep.points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        svg::write_plot(
            &path,
            &format!("L2 risk vs kappa: {}", r.model.label()),
            &[
                svg::Series { label: "risk", points: sweep.points.clone() },
                svg::Series {
                    label: "universal",
                    points: vec![(sweep.universal_kappa, lo), (sweep.universal_kappa, hi)],
                },
            ],
        )?;
        println!("sweep-kappa: plot -> {}", path.display());
    }
    Ok(())
}

fn interpolate(points: &[(f64, f64)], x: f64) -> f64 {
    if x <= points[0].0 {
        return points[0].1;
    }
    for pair in points.windows(2) {
        let (x0, y0) = pair[0];
        let (x1, y1) = pair[1];
        if x <= x1 {
            let w = (x - x0) / (x1 - x0);
            return y0 + w * (y1 - y0);
        }
    }
    points[points.len() - 1].1
}

fn cmd_sweep_p(common: &CommonArgs, reps: Option<u32>, p_grid: &str) -> Result<(), CliError> {
    let r = resolve(common, reps, 10, "sweep_p.csv")?;
    let grid: Result<Vec<f64>, _> = p_grid.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let grid = grid.map_err(|_| {
        CliError::Core(CoreError::BadParameter(format!("cannot parse p grid `{p_grid}`")))
    })?;
    let cfg = experiment(&r);
    let points = p_sweep(&cfg, &grid)?;

    let mut out = CsvFile::create(&r.out, &["model", "p", "method", "risk_lp"])?;
    for pt in &points {
        out.row(&[r.model.label().into(), fmt(pt.p), "block".into(), fmt(pt.block_risk)])?;
        out.row(&[r.model.label().into(), fmt(pt.p), "termwise".into(), fmt(pt.termwise_risk)])?;
    }
    let rows = out.finish()?;
    println!(
        "sweep-p: model={} N={} n={} reps={} seed={} p_grid={p_grid} -> {} ({rows} rows)",
        r.model.label(),
        r.nspec.label(),
        r.n,
        r.reps,
        r.seed,
        r.out.display()
    );

    if r.svg {
        let path = svg_path(&r.out, "");
        svg::write_plot(
            &path,
            &format!("L_p risk vs p: {}", r.model.label()),
            &[
                svg::Series {
                    label: "block",
                    points: points.iter().map(|pt| (pt.p, pt.block_risk)).collect(),
                },
                svg::Series {
                    label: "termwise",
                    points: points.iter().map(|pt| (pt.p, pt.termwise_risk)).collect(),
                },
            ],
        )?;
        println!("sweep-p: plot -> {}", path.display());
    }
    Ok(())
}

fn cmd_kernel_bandwidth(common: &CommonArgs, reps: Option<u32>) -> Result<(), CliError> {
    let r = resolve(common, reps, 20, "kernel_bandwidth.csv")?;
    let spec = r.nspec.weight_spec()?;
    let cfg = experiment(&r);

    // LSCV curve from the first replication's sample
    let data = replication_data(&cfg, &spec, 0)?;
    let selection = select_h_lscv(&data.sample, r.folds, data.fold_seed)?;

    // Monte Carlo MISE along the same bandwidth grid
    let h_grid: Vec<f64> = selection.scan.iter().map(|&(h, _)| h).collect();
    let scan = h_mise_scan(&cfg, &h_grid)?;

    let mut out = CsvFile::create(
        &r.out,
        &["model", "h", "lscv", "is_lscv_argmin", "mise", "is_mise_argmin", "h_rot"],
    )?;
    for (&(h, score), &(_, mise)) in selection.scan.iter().zip(&scan.curve) {
        out.row(&[
            r.model.label().into(),
            fmt(h),
            fmt(score),
            if h == selection.h_lscv { "1" } else { "0" }.into(),
            fmt(mise),
            if h == scan.h_mise { "1" } else { "0" }.into(),
            fmt(selection.h_rot),
        ])?;
    }
    let rows = out.finish()?;
    println!(
        "kernel-bandwidth: model={} N={} n={} reps={} seed={} h_lscv={:.4} h_mise={:.4} h_rot={:.4} -> {} ({rows} rows)",
        r.model.label(),
        r.nspec.label(),
        r.n,
        r.reps,
        r.seed,
        selection.h_lscv,
        scan.h_mise,
        selection.h_rot,
        r.out.display()
    );

    if r.svg {
        let lscv_plot = svg_path(&r.out, "lscv.");
        svg::write_plot(
            &lscv_plot,
            &format!("LSCV(h): {}", r.model.label()),
            &[svg::Series { label: "lscv", points: selection.scan.clone() }],
        )?;
        let mise_plot = svg_path(&r.out, "mise.");
        svg::write_plot(
            &mise_plot,
            &format!("MISE(h): {}", r.model.label()),
            &[svg::Series { label: "mise", points: scan.curve.clone() }],
        )?;
        println!(
            "kernel-bandwidth: plots -> {} {}",
            lscv_plot.display(),
            mise_plot.display()
        );
    }
    Ok(())
}

fn cmd_compare(common: &CommonArgs, reps: Option<u32>) -> Result<(), CliError> {
    let r = resolve(common, reps, 50, "compare.csv")?;
    let spec = r.nspec.weight_spec()?;
    let grid = r.estimator.grid()?;
    let truth = true_g_grid(&r.model, &spec, &grid)?;

    let mut block_cfg = r.estimator.clone();
    block_cfg.clip_nonnegative = true;

    let rows: Vec<Result<(Vec<f64>, Vec<f64>), CoreError>> =
        wden_core::par::map_indexed(r.reps, |rep| {
            let mut rng = stream(r.seed, rep as u64);
            let sample = sample_model(&r.model, r.n, &mut rng);
            let fold_seed = rand_u64(&mut rng);
            let cdf = EmpiricalCdf::new(&sample)?;
            let g_block = plug_in(&estimate_density(&sample, &block_cfg)?, &cdf, &spec)?;
            let selection = select_h_lscv(&sample, r.folds, fold_seed)?;
            let f_kernel = kernel_density_on_grid(&sample, selection.h_lscv, &grid)?;
            let g_kernel = plug_in(&f_kernel, &cdf, &spec)?;
            Ok((g_block.values().to_vec(), g_kernel.values().to_vec()))
        });

    let mut block_curves = Vec::with_capacity(rows.len());
    let mut kernel_curves = Vec::with_capacity(rows.len());
    for row in rows {
        let (b, k) = row?;
        block_curves.push(b);
        kernel_curves.push(k);
    }

    let stats = |curves: &[Vec<f64>], k: usize| {
        let mut column: Vec<f64> = curves.iter().map(|c| c[k]).collect();
        column.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite estimates"));
        let mean = column.iter().sum::<f64>() / column.len() as f64;
        (mean, quantile_sorted(&column, 0.05), quantile_sorted(&column, 0.95))
    };

    let mut out = CsvFile::create(
        &r.out,
        &[
            "model", "x", "g_true", "block_mean", "block_p05", "block_p95", "kernel_mean",
            "kernel_p05", "kernel_p95",
        ],
    )?;
    for k in 0..grid.len() {
        let (bm, bl, bh) = stats(&block_curves, k);
        let (km, kl, kh) = stats(&kernel_curves, k);
        out.row(&[
            r.model.label().into(),
            fmt(grid.point(k)),
            fmt(truth[k]),
            fmt(bm),
            fmt(bl),
            fmt(bh),
            fmt(km),
            fmt(kl),
            fmt(kh),
        ])?;
    }
    let rows_written = out.finish()?;
    println!(
        "compare: model={} N={} n={} reps={} seed={} -> {} ({rows_written} rows)",
        r.model.label(),
        r.nspec.label(),
        r.n,
        r.reps,
        r.seed,
        r.out.display()
    );

    if r.svg {
        let xs: Vec<f64> = grid.points().collect();
        let mean_series = |curves: &[Vec<f64>]| {
            (0..grid.len())
                .map(|k| (xs[k], curves.iter().map(|c| c[k]).sum::<f64>() / curves.len() as f64))
                .collect()
        };
        let path = svg_path(&r.out, "");
        svg::write_plot(
            &path,
            &format!("mean estimates: {} / {}", r.model.label(), r.nspec.label()),
            &[
                svg::Series { label: "g_true", points: xs.iter().copied().zip(truth).collect() },
                svg::Series { label: "block", points: mean_series(&block_curves) },
                svg::Series { label: "kernel", points: mean_series(&kernel_curves) },
            ],
        )?;
        println!("compare: plot -> {}", path.display());
    }
    Ok(())
}

/// Fold-shuffle seed drawn from the replication stream right after the
/// sample, matching the derivation inside the risk harness.
fn rand_u64<R: rand::RngCore>(rng: &mut R) -> u64 {
    rng.next_u64()
}
