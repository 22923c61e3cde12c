//! Acceptance suite: every release criterion as one test, printing a
//! PASS/FAIL line with the measured numbers (run with `-- --nocapture` to
//! see them all). The replicated MISE table is computed once and shared by
//! the criteria that read it.
//!
//! All runs are seeded (master seed 7) and deterministic, including under
//! the parallel feature.

use std::sync::OnceLock;
use std::time::Instant;

use rand::Rng;
use wden_core::estimator::{
    block_threshold, estimate_density, EstimatorConfig, KappaMode,
};
use wden_core::kernel::select_h_lscv;
use wden_core::numeric::{cumulative_trapezoid, ks_distance, simpson};
use wden_core::risk::{
    build_kappa_grid, h_mise_scan, kappa_sweep, mise_study, p_sweep, replication_data,
    ExperimentConfig,
};
use wden_core::stream::stream;
use wden_core::testbed::{sample_max_of_n, sample_model, true_g, MixtureModel, NSpec, MODEL_NAMES};
use wden_core::wavelet::{dwt_periodized, idwt_periodized, WaveletFilter};
use wden_core::weights::{Pgf, WeightSpec};

const SEED: u64 = 7;

// ----------------------------------------------------------------------
// criterion 1: transform correctness
// ----------------------------------------------------------------------

#[test]
fn criterion_01_transform_correctness() {
    let start = Instant::now();
    let mut rng = stream(SEED, 100);
    let mut worst_rec: f64 = 0.0;
    let mut worst_energy: f64 = 0.0;
    for name in ["haar", "db2", "sym6"] {
        let filter = WaveletFilter::new(name).unwrap();
        for _ in 0..100 {
            let signal: Vec<f64> = (0..512).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let pyr = dwt_periodized(&signal, &filter, 3).unwrap();
            let rec = idwt_periodized(&pyr, &filter).unwrap();
            let err = signal
                .iter()
                .zip(&rec)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            worst_rec = worst_rec.max(err);
            let energy: f64 = signal.iter().map(|v| v * v).sum();
            worst_energy = worst_energy.max((energy - pyr.energy()).abs() / energy);
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 1 (transform correctness): reconstruction {:.2e}, parseval {:.2e}, {} ms \
         => {}",
        worst_rec,
        worst_energy,
        elapsed.as_millis(),
        if worst_rec <= 1e-10 && worst_energy <= 1e-10 { "PASS" } else { "FAIL" }
    );
    assert!(worst_rec <= 1e-10, "round trip error {worst_rec}");
    assert!(worst_energy <= 1e-10, "energy error {worst_energy}");
    assert!(elapsed.as_secs_f64() < 1.0, "transform check took {elapsed:?}");
}

// ----------------------------------------------------------------------
// criterion 2: estimator integral invariance
// ----------------------------------------------------------------------

#[test]
fn criterion_02_estimator_integral_invariance() {
    let mut rng = stream(SEED, 200);
    let mut worst: f64 = 0.0;
    for trial in 0..50 {
        let model = MixtureModel::new(MODEL_NAMES[trial % 4]).unwrap();
        let n = rng.gen_range(30..3000);
        let kappa_mode = if rng.gen_bool(0.3) {
            KappaMode::Universal
        } else {
            KappaMode::Fixed(rng.gen_range(0.0..6.0))
        };
        let sample = sample_model(&model, n, &mut rng);
        let cfg = EstimatorConfig { kappa_mode, ..EstimatorConfig::default() };
        let est = estimate_density(&sample, &cfg).unwrap();
        worst = worst.max((est.integral() - 1.0).abs());
    }
    println!(
        "criterion 2 (integral invariance): worst |integral - 1| = {worst:.2e} => {}",
        if worst <= 1e-8 { "PASS" } else { "FAIL" }
    );
    assert!(worst <= 1e-8);
}

// ----------------------------------------------------------------------
// criterion 3: scalar-threshold equivalence
// ----------------------------------------------------------------------

#[test]
fn criterion_03_scalar_threshold_equivalence() {
    let filter = WaveletFilter::new("db3").unwrap();
    let mut rng = stream(SEED, 300);
    for _ in 0..1000 {
        let signal: Vec<f64> = (0..64).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let pyramid = dwt_periodized(&signal, &filter, 2).unwrap();
        let n = rng.gen_range(8..4000);
        let kappa = rng.gen_range(0.0..3.0);
        let out = block_threshold(&pyramid, n, 2.0, 1, kappa, 5);
        let threshold = kappa / (n as f64).sqrt();
        for level in pyramid.detail_levels() {
            let original = pyramid.detail(level).unwrap();
            let kept = out.detail(level).unwrap();
            for (o, k) in original.iter().zip(kept) {
                let brute = if o.abs() >= threshold { *o } else { 0.0 };
                assert_eq!(*k, brute, "level {level}: {o} at threshold {threshold}");
            }
        }
    }
    println!(
        "criterion 3 (scalar-threshold equivalence): 1000 pyramids, kept sets identical => PASS"
    );
}

// ----------------------------------------------------------------------
// criterion 4: weight normalization
// ----------------------------------------------------------------------

#[test]
fn criterion_04_weight_normalization() {
    let mut specs: Vec<WeightSpec> = Vec::new();
    for m in 1..=10 {
        specs.push(WeightSpec::degenerate(m).unwrap());
    }
    for m in 1..=6 {
        for j in 1..=m {
            specs.push(WeightSpec::order_statistic(m, j).unwrap());
        }
    }
    for eta in [0.1, 0.5, 0.9] {
        specs.push(WeightSpec::geometric(eta).unwrap());
    }
    for lambda in [0.5, 1.0, 4.0] {
        specs.push(WeightSpec::poisson_plus_one(lambda).unwrap());
    }
    let pileups = [
        WeightSpec::pile_up(Pgf::geometric(0.5).unwrap()),
        WeightSpec::pile_up(Pgf::constant(2).unwrap()),
    ];

    let mut worst: f64 = 0.0;
    let mut worst_label = String::new();
    for spec in &specs {
        let mass = simpson(|u| spec.eval(u).unwrap(), 0.0, 1.0, 10_000);
        if (mass - 1.0).abs() > worst {
            worst = (mass - 1.0).abs();
            worst_label = spec.label();
        }
    }
    // The pile-up weight of N = 2 has an integrable singularity at u = 1,
    // so integrate in the substituted variable u = 1 - s^2, where the
    // transformed integrand 2 s w(1 - s^2) is smooth for both pile-up pgfs.
    // Its limit at s = 0 is 0 when P(N=1) > 0 and 1/sqrt(P(N=2)) otherwise.
    for spec in &pileups {
        let WeightSpec::PileUp { pgf } = spec else { unreachable!() };
        let at_zero = match pgf {
            Pgf::Geometric { eta } => {
                if *eta > 0.0 {
                    0.0
                } else {
                    1.0 / (eta * (1.0 - eta)).sqrt()
                }
            }
            Pgf::Table(mass) => {
                if mass[0] > 0.0 {
                    0.0
                } else {
                    1.0 / mass[1].sqrt()
                }
            }
        };
        let integrand = |s: f64| {
            if s == 0.0 {
                at_zero
            } else {
                2.0 * s * spec.eval(1.0 - s * s).unwrap()
            }
        };
        let mass = simpson(integrand, 0.0, 1.0, 10_000);
        if (mass - 1.0).abs() > worst {
            worst = (mass - 1.0).abs();
            worst_label = spec.label();
        }
    }
    println!(
        "criterion 4 (weight normalization): {} specs, worst |mass - 1| = {worst:.2e} ({worst_label}) => {}",
        specs.len() + pileups.len(),
        if worst <= 1e-6 { "PASS" } else { "FAIL" }
    );
    assert!(worst <= 1e-6, "{worst_label}: {worst}");
}

// ----------------------------------------------------------------------
// criterion 5: sampler / density consistency
// ----------------------------------------------------------------------

#[test]
fn criterion_05_sampler_density_consistency() {
    let nspecs = [
        NSpec::Degenerate { m: 2 },
        NSpec::Geometric { eta: 0.9 },
        NSpec::Geometric { eta: 0.5 },
        NSpec::Geometric { eta: 0.1 },
        NSpec::PoissonPlusOne { lambda: 1.0 },
    ];
    let mut worst: f64 = 0.0;
    let mut worst_label = String::new();
    let mut tag = 500;
    for name in MODEL_NAMES {
        let model = MixtureModel::new(name).unwrap();
        for nspec in &nspecs {
            let spec = nspec.weight_spec().unwrap();
            // oracle CDF: cumulative quadrature of the target density
            let cells = 8192usize;
            let step = 8.0 / cells as f64;
            let density: Vec<f64> = (0..=cells)
                .map(|i| true_g(&model, &spec, -4.0 + step * i as f64).unwrap())
                .collect();
            let cumulative = cumulative_trapezoid(&density, step);
            let oracle_cdf = |x: f64| -> f64 {
                let pos = ((x + 4.0) / step).clamp(0.0, cells as f64);
                let idx = pos.floor() as usize;
                if idx >= cells {
                    return cumulative[cells];
                }
                let w = pos - idx as f64;
                cumulative[idx] * (1.0 - w) + cumulative[idx + 1] * w
            };

            let draws = sample_max_of_n(&model, nspec, 10_000, &mut stream(SEED, tag));
            tag += 1;
            let d = ks_distance(&draws, oracle_cdf);
            if d > worst {
                worst = d;
                worst_label = format!("{name}/{}", nspec.label());
            }
        }
    }
    println!(
        "criterion 5 (sampler/density consistency): 20 presets, worst KS = {worst:.4} ({worst_label}) => {}",
        if worst < 0.02 { "PASS" } else { "FAIL" }
    );
    assert!(worst < 0.02, "{worst_label}: KS {worst}");
}

// ----------------------------------------------------------------------
// criteria 6-8: the replicated MISE table
// ----------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Cell {
    model: &'static str,
    eta: f64,
    n: usize,
    block: f64,
    termwise: f64,
    kernel: f64,
}

fn table_cells() -> &'static (Vec<Cell>, f64) {
    static TABLE: OnceLock<(Vec<Cell>, f64)> = OnceLock::new();
    TABLE.get_or_init(|| {
        let start = Instant::now();
        let mut cells = Vec::new();
        let plan: Vec<(&'static str, Vec<f64>)> = vec![
            ("uniform", vec![0.9, 0.5, 0.1]),
            ("strongly-skewed", vec![0.9, 0.5, 0.1]),
            ("separated-bimodal", vec![0.9, 0.5]),
        ];
        for (name, etas) in plan {
            for eta in etas {
                for n in [1000usize, 5000] {
                    let model = MixtureModel::new(name).unwrap();
                    let cfg =
                        ExperimentConfig::new(model, NSpec::Geometric { eta }, n, 50, SEED);
                    let study = mise_study(&cfg).unwrap();
                    let cell = Cell {
                        model: name,
                        eta,
                        n,
                        block: 1000.0 * study.block.mean_risk,
                        termwise: 1000.0 * study.termwise.mean_risk,
                        kernel: 1000.0 * study.kernel.mean_risk,
                    };
                    println!(
                        "  table cell {name} eta={eta} n={n}: block={:.2} termwise={:.2} kernel={:.2}",
                        cell.block, cell.termwise, cell.kernel
                    );
                    cells.push(cell);
                }
            }
        }
        (cells, start.elapsed().as_secs_f64())
    })
}

#[test]
fn criterion_06_table_ranking() {
    let (cells, elapsed) = table_cells();
    let mut violations = Vec::new();
    for cell in cells {
        match cell.model {
            "uniform" | "strongly-skewed" => {
                if !(cell.block < cell.kernel) {
                    violations.push(format!(
                        "{} eta={} n={}: block {:.2} !< kernel {:.2}",
                        cell.model, cell.eta, cell.n, cell.block, cell.kernel
                    ));
                }
            }
            "separated-bimodal" => {
                if !(cell.kernel <= cell.block) {
                    violations.push(format!(
                        "{} eta={} n={}: kernel {:.2} !<= block {:.2}",
                        cell.model, cell.eta, cell.n, cell.kernel, cell.block
                    ));
                }
            }
            _ => unreachable!(),
        }
    }
    let cores = std::thread::available_parallelism().map(|v| v.get()).unwrap_or(1);
    println!(
        "criterion 6 (table ranking): {} cells in {:.0} s on {cores} cores \
         (runtime target: < 10 min on a laptop), {} violations => {}",
        cells.len(),
        elapsed,
        violations.len(),
        if violations.is_empty() { "PASS" } else { "FAIL" }
    );
    for v in &violations {
        println!("  violation: {v}");
    }
    assert!(violations.is_empty(), "{violations:#?}");
}

#[test]
fn criterion_07_table_magnitudes() {
    let (cells, _) = table_cells();
    let cell = cells
        .iter()
        .find(|c| c.model == "uniform" && c.eta == 0.9 && c.n == 1000)
        .unwrap();
    let block_ok = cell.block >= 6.3 && cell.block <= 14.7;
    let kernel_ok = cell.kernel >= 8.3 && cell.kernel <= 19.3;
    println!(
        "criterion 7 (table magnitudes): uniform/0.9/1000 block = {:.2} (band [6.3, 14.7] {}), \
         kernel = {:.2} (band [8.3, 19.3] {}) => {}",
        cell.block,
        if block_ok { "ok" } else { "out" },
        cell.kernel,
        if kernel_ok { "ok" } else { "out" },
        if block_ok && kernel_ok { "PASS" } else { "FAIL" }
    );
    assert!(block_ok, "block {:.3} outside [6.3, 14.7]", cell.block);
    assert!(kernel_ok, "kernel {:.3} outside [8.3, 19.3]", cell.kernel);
}

#[test]
fn criterion_08_trend_checks() {
    // (a) MISE decreasing from n = 1000 to n = 5000, per cell family/method
    let (cells, _) = table_cells();
    let mut trend_violations = Vec::new();
    for cell in cells.iter().filter(|c| c.n == 1000) {
        let big = cells
            .iter()
            .find(|c| c.model == cell.model && c.eta == cell.eta && c.n == 5000)
            .unwrap();
        for (label, small, large) in [
            ("block", cell.block, big.block),
            ("termwise", cell.termwise, big.termwise),
            ("kernel", cell.kernel, big.kernel),
        ] {
            if !(large < small) {
                trend_violations.push(format!(
                    "{} eta={} {label}: {large:.2} at n=5000 !< {small:.2} at n=1000",
                    cell.model, cell.eta
                ));
            }
        }
    }

    // (b) R_p decreasing in p for the block estimator, one violation allowed
    // per model
    let p_grid = [1.0, 1.5, 2.0, 2.5, 3.0];
    let mut p_violations = Vec::new();
    for name in MODEL_NAMES {
        let model = MixtureModel::new(name).unwrap();
        let cfg = ExperimentConfig::new(model, NSpec::Degenerate { m: 2 }, 1000, 10, SEED);
        let points = p_sweep(&cfg, &p_grid).unwrap();
        let mut local = 0;
        for pair in points.windows(2) {
            if !(pair[1].block_risk < pair[0].block_risk) {
                local += 1;
            }
        }
        if local > 1 {
            p_violations.push(format!("{name}: {local} non-decreasing steps"));
        }
    }

    let pass = trend_violations.len() <= 1 && p_violations.is_empty();
    println!(
        "criterion 8 (trends): n-trend violations = {} (<= 1 allowed), p-monotonicity \
         violations = {:?} => {}",
        trend_violations.len(),
        p_violations,
        if pass { "PASS" } else { "FAIL" }
    );
    for v in &trend_violations {
        println!("  n-trend: {v}");
    }
    assert!(trend_violations.len() <= 1, "{trend_violations:#?}");
    assert!(p_violations.is_empty(), "{p_violations:#?}");
}

// ----------------------------------------------------------------------
// criterion 9: universal-threshold placement
// ----------------------------------------------------------------------

#[test]
fn criterion_09_universal_threshold_placement() {
    let mut worst_ratio: f64 = 1.0;
    let mut lines = Vec::new();
    for name in MODEL_NAMES {
        let model = MixtureModel::new(name).unwrap();
        let cfg = ExperimentConfig::new(model, NSpec::Degenerate { m: 2 }, 1000, 10, SEED);
        let grid = build_kappa_grid(&cfg, 13).unwrap();
        let sweep = kappa_sweep(&cfg, &grid).unwrap();
        let ratio = if sweep.argmin_kappa > 0.0 {
            (sweep.argmin_kappa / sweep.universal_kappa)
                .max(sweep.universal_kappa / sweep.argmin_kappa)
        } else {
            f64::INFINITY
        };
        lines.push(format!(
            "{name}: argmin {:.2}, universal {:.2}, ratio {:.2}",
            sweep.argmin_kappa, sweep.universal_kappa, ratio
        ));
        worst_ratio = worst_ratio.max(ratio);
    }
    println!(
        "criterion 9 (universal-threshold placement): worst ratio {:.2} => {}",
        worst_ratio,
        if worst_ratio <= 2.0 { "PASS" } else { "FAIL" }
    );
    for line in &lines {
        println!("  {line}");
    }
    assert!(worst_ratio <= 2.0, "{lines:#?}");
}

// ----------------------------------------------------------------------
// criterion 10: bandwidth sanity
// ----------------------------------------------------------------------

#[test]
fn criterion_10_bandwidth_sanity() {
    let mut violations = Vec::new();
    let mut lines = Vec::new();
    for (name, lo, hi) in [("uniform", 0.025, 0.10), ("strongly-skewed", 0.02, 0.09)] {
        let model = MixtureModel::new(name).unwrap();
        let cfg = ExperimentConfig::new(model, NSpec::Geometric { eta: 0.9 }, 1000, 20, SEED);
        let spec = cfg.nspec.weight_spec().unwrap();

        let data = replication_data(&cfg, &spec, 0).unwrap();
        let selection = select_h_lscv(&data.sample, cfg.folds, data.fold_seed).unwrap();
        let h_grid: Vec<f64> = selection.scan.iter().map(|&(h, _)| h).collect();
        let scan = h_mise_scan(&cfg, &h_grid).unwrap();

        lines.push(format!(
            "{name}: h_lscv = {:.4}, h_mise = {:.4} (window [{lo}, {hi}])",
            selection.h_lscv, scan.h_mise
        ));
        if !(selection.h_lscv >= lo && selection.h_lscv <= hi) {
            violations.push(format!("{name}: h_lscv {:.4} outside [{lo}, {hi}]", selection.h_lscv));
        }
        if !(scan.h_mise >= lo && scan.h_mise <= hi) {
            violations.push(format!("{name}: h_mise {:.4} outside [{lo}, {hi}]", scan.h_mise));
        }
    }
    println!(
        "criterion 10 (bandwidth sanity): {} => {}",
        lines.join("; "),
        if violations.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(violations.is_empty(), "{violations:#?}");
}
