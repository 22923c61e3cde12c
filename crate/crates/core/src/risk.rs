//! L_p risk, replicated MISE studies, and the threshold / exponent /
//! bandwidth sweeps. Replications are keyed by index so parallel and
//! sequential execution produce identical reports.

use crate::error::{Error, Result};
use crate::estimator::{estimate_density, EstimatorConfig, KappaMode};
use crate::grid::Grid;
use crate::kernel::{kernel_density_on_grid, select_h_lscv};
use crate::par;
use crate::stream::stream;
use crate::testbed::{sample_model, true_g, MixtureModel, NSpec};
use crate::weights::{plug_in, EmpiricalCdf, WeightSpec};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Block,
    Termwise,
    Kernel,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Block => "block",
            Method::Termwise => "termwise",
            Method::Kernel => "kernel",
        }
    }
}

/// One experiment cell: model, count law, sample size, replication count
/// and seeding, plus the estimator settings shared by the wavelet methods.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub model: MixtureModel,
    pub nspec: NSpec,
    pub n: usize,
    pub replications: u32,
    pub master_seed: u64,
    /// Cross-validation folds for the kernel bandwidth (10 in the standard
    /// protocol; 1 = exact leave-one-out).
    pub folds: usize,
    pub estimator: EstimatorConfig,
    /// Compute risks on the clipped estimate instead of the raw one.
    pub postprocessed_risk: bool,
    /// Rescale samples deterministically onto the unit window, x -> x/b,
    /// and estimate/score on that axis. Risks and bandwidths then come out
    /// window-normalized (scale-free), the convention the reference MISE
    /// tables and bandwidth values use.
    pub window_normalized: bool,
}

/// Half support of the estimation window on the normalized axis.
pub const UNIT_HALF_SUPPORT: f64 = 1.0;

impl ExperimentConfig {
    pub fn new(model: MixtureModel, nspec: NSpec, n: usize, replications: u32, master_seed: u64) -> Self {
        ExperimentConfig {
            model,
            nspec,
            n,
            replications,
            master_seed,
            folds: 10,
            estimator: EstimatorConfig::default(),
            postprocessed_risk: false,
            window_normalized: true,
        }
    }

    pub fn p(&self) -> f64 {
        self.estimator.p
    }

    pub fn validate(&self) -> Result<()> {
        self.nspec.validate()?;
        self.estimator.validate()?;
        if self.replications < 2 {
            return Err(Error::BadParameter(format!(
                "need at least 2 replications, got {}",
                self.replications
            )));
        }
        Ok(())
    }

    /// Estimator settings on the experiment axis.
    pub fn estimator_on_axis(&self) -> EstimatorConfig {
        let mut est = self.estimator.clone();
        if self.window_normalized {
            est.half_support = UNIT_HALF_SUPPORT;
        }
        est
    }

    /// Evaluation grid on the experiment axis.
    pub fn grid_on_axis(&self) -> Result<Grid> {
        self.estimator_on_axis().grid()
    }
}

/// One replication's data, mapped to the experiment axis: the (possibly
/// normalized) sample, its ECDF, the target density on the grid, and the
/// derived fold seed for bandwidth selection.
pub struct ReplicationData {
    pub sample: Vec<f64>,
    pub cdf: EmpiricalCdf,
    pub truth: Vec<f64>,
    pub grid: Grid,
    pub fold_seed: u64,
}

/// Draw replication `r` of the experiment and map it onto the estimation
/// axis. Under window normalization the target density transforms with the
/// same x -> x/b map as the data.
pub fn replication_data(cfg: &ExperimentConfig, spec: &WeightSpec, r: u32) -> Result<ReplicationData> {
    let mut rng = stream(cfg.master_seed, r as u64);
    let raw = sample_model(&cfg.model, cfg.n, &mut rng);
    let fold_seed: u64 = rng.gen();
    let grid = cfg.grid_on_axis()?;

    let (sample, truth) = if cfg.window_normalized {
        let slope = UNIT_HALF_SUPPORT / cfg.estimator.half_support;
        let sample: Vec<f64> = raw.iter().map(|x| x * slope).collect();
        let truth = grid
            .points()
            .map(|u| true_g(&cfg.model, spec, u / slope).map(|g| g / slope))
            .collect::<Result<Vec<f64>>>()?;
        (sample, truth)
    } else {
        let truth = true_g_grid(&cfg.model, spec, &grid)?;
        (raw, truth)
    };

    let cdf = EmpiricalCdf::new(&sample)?;
    Ok(ReplicationData { sample, cdf, truth, grid, fold_seed })
}

/// Replicated risk values for one (cell, method) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskReport {
    pub per_replication: Vec<f64>,
    pub mean_risk: f64,
    pub n: usize,
    pub p: f64,
    pub method: Method,
    pub model: String,
    pub weight: String,
    pub seed: u64,
}

fn report(cfg: &ExperimentConfig, method: Method, p: f64, per_replication: Vec<f64>) -> RiskReport {
    let mean_risk = per_replication.iter().sum::<f64>() / per_replication.len() as f64;
    RiskReport {
        per_replication,
        mean_risk,
        n: cfg.n,
        p,
        method,
        model: cfg.model.label().to_string(),
        weight: cfg.nspec.label(),
        seed: cfg.master_seed,
    }
}

/// Discretized L_p distance `(1/T) sum |est - truth|^p`.
pub fn lp_risk(est: &[f64], truth: &[f64], p: f64) -> Result<f64> {
    if est.len() != truth.len() {
        return Err(Error::LengthMismatch { left: est.len(), right: truth.len() });
    }
    if !(p >= 1.0) {
        return Err(Error::BadParameter(format!("risk exponent must be >= 1, got {p}")));
    }
    let sum: f64 = if p == 2.0 {
        est.iter().zip(truth).map(|(a, b)| (a - b) * (a - b)).sum()
    } else if p == 1.0 {
        est.iter().zip(truth).map(|(a, b)| (a - b).abs()).sum()
    } else {
        est.iter().zip(truth).map(|(a, b)| (a - b).abs().powf(p)).sum()
    };
    Ok(sum / est.len() as f64)
}

/// The target density on the evaluation grid.
pub fn true_g_grid(model: &MixtureModel, spec: &WeightSpec, grid: &Grid) -> Result<Vec<f64>> {
    grid.points().map(|x| true_g(model, spec, x)).collect()
}

fn run_replications<T, F>(count: u32, sequential: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> T + Sync + Send,
{
    if sequential {
        par::map_indexed_sequential(count, f)
    } else {
        par::map_indexed(count, f)
    }
}

/// Per-replication risks for the three methods against the same sample.
#[derive(Debug, Clone, PartialEq)]
pub struct MiseStudy {
    pub block: RiskReport,
    pub termwise: RiskReport,
    pub kernel: RiskReport,
}

/// Replicated MISE comparison: block, term-by-term (block length 1) and the
/// LSCV kernel plug-in, each scored by R_2 against the analytic target.
pub fn mise_study(cfg: &ExperimentConfig) -> Result<MiseStudy> {
    mise_study_impl(cfg, false)
}

/// Sequential twin of [`mise_study`]; same output, no thread pool.
pub fn mise_study_sequential(cfg: &ExperimentConfig) -> Result<MiseStudy> {
    mise_study_impl(cfg, true)
}

fn mise_study_impl(cfg: &ExperimentConfig, sequential: bool) -> Result<MiseStudy> {
    cfg.validate()?;
    let spec = cfg.nspec.weight_spec()?;

    let mut block_cfg = cfg.estimator_on_axis();
    let mut term_cfg = block_cfg.clone();
    term_cfg.block_length_override = Some(1);
    if cfg.postprocessed_risk {
        block_cfg.clip_nonnegative = true;
        term_cfg.clip_nonnegative = true;
    }

    let rows = run_replications(cfg.replications, sequential, |r| -> Result<[f64; 3]> {
        let data = replication_data(cfg, &spec, r)?;

        let g_block = plug_in(&estimate_density(&data.sample, &block_cfg)?, &data.cdf, &spec)?;
        let g_term = plug_in(&estimate_density(&data.sample, &term_cfg)?, &data.cdf, &spec)?;
        let selection = select_h_lscv(&data.sample, cfg.folds, data.fold_seed)?;
        let f_kernel = kernel_density_on_grid(&data.sample, selection.h_lscv, &data.grid)?;
        let g_kernel = plug_in(&f_kernel, &data.cdf, &spec)?;

        Ok([
            lp_risk(g_block.values(), &data.truth, 2.0)?,
            lp_risk(g_term.values(), &data.truth, 2.0)?,
            lp_risk(g_kernel.values(), &data.truth, 2.0)?,
        ])
    });

    let mut block = Vec::with_capacity(rows.len());
    let mut term = Vec::with_capacity(rows.len());
    let mut kernel = Vec::with_capacity(rows.len());
    for row in rows {
        let [b, t, k] = row?;
        block.push(b);
        term.push(t);
        kernel.push(k);
    }
    Ok(MiseStudy {
        block: report(cfg, Method::Block, 2.0, block),
        termwise: report(cfg, Method::Termwise, 2.0, term),
        kernel: report(cfg, Method::Kernel, 2.0, kernel),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct KappaSweep {
    /// (kappa, mean R_2) along the requested grid.
    pub points: Vec<(f64, f64)>,
    /// Mean universal threshold level across the replications.
    pub universal_kappa: f64,
    pub argmin_kappa: f64,
}

/// Mean universal threshold level over the configured replications; used to
/// build a sweep grid spanning `[0, 4 kappa]`.
pub fn mean_universal_kappa(cfg: &ExperimentConfig) -> Result<f64> {
    cfg.validate()?;
    let spec = cfg.nspec.weight_spec()?;
    let mut universal = cfg.estimator_on_axis();
    universal.kappa_mode = KappaMode::Universal;
    let values = run_replications(cfg.replications, false, |r| -> Result<f64> {
        let data = replication_data(cfg, &spec, r)?;
        let est = estimate_density(&data.sample, &universal)?;
        Ok(est.scales().expect("wavelet estimate").kappa)
    });
    let count = values.len() as f64;
    let mut sum = 0.0;
    for v in values {
        sum += v?;
    }
    Ok(sum / count)
}

/// Evenly spaced threshold grid `[0, 4 * mean universal kappa]`.
pub fn build_kappa_grid(cfg: &ExperimentConfig, len: usize) -> Result<Vec<f64>> {
    if len < 10 {
        return Err(Error::BadParameter(format!("kappa grid needs >= 10 points, got {len}")));
    }
    let top = 4.0 * mean_universal_kappa(cfg)?;
    Ok((0..len).map(|k| top * k as f64 / (len - 1) as f64).collect())
}

/// Mean R_2 of the weighted block estimator as a function of the threshold
/// level, with the universal level marked.
pub fn kappa_sweep(cfg: &ExperimentConfig, kappa_grid: &[f64]) -> Result<KappaSweep> {
    cfg.validate()?;
    if kappa_grid.len() < 10 {
        return Err(Error::BadParameter(format!(
            "kappa grid needs >= 10 points, got {}",
            kappa_grid.len()
        )));
    }
    if kappa_grid.iter().any(|k| !(k.is_finite() && *k >= 0.0)) {
        return Err(Error::BadParameter("kappa grid values must be finite and >= 0".into()));
    }
    let spec = cfg.nspec.weight_spec()?;
    let base = cfg.estimator_on_axis();

    let rows = run_replications(cfg.replications, false, |r| -> Result<(Vec<f64>, f64)> {
        let data = replication_data(cfg, &spec, r)?;

        let mut universal = base.clone();
        universal.kappa_mode = KappaMode::Universal;
        let reference = estimate_density(&data.sample, &universal)?;
        let kappa_univ = reference.scales().expect("wavelet estimate").kappa;

        let mut risks = Vec::with_capacity(kappa_grid.len());
        for &kappa in kappa_grid {
            let mut fixed = base.clone();
            fixed.kappa_mode = KappaMode::Fixed(kappa);
            let g_hat = plug_in(&estimate_density(&data.sample, &fixed)?, &data.cdf, &spec)?;
            risks.push(lp_risk(g_hat.values(), &data.truth, 2.0)?);
        }
        Ok((risks, kappa_univ))
    });

    let mut mean = vec![0.0; kappa_grid.len()];
    let mut kappa_sum = 0.0;
    let reps = rows.len() as f64;
    for row in rows {
        let (risks, kappa_univ) = row?;
        for (m, r) in mean.iter_mut().zip(&risks) {
            *m += r / reps;
        }
        kappa_sum += kappa_univ;
    }
    let points: Vec<(f64, f64)> = kappa_grid.iter().copied().zip(mean).collect();
    let argmin_kappa = points
        .iter()
        .fold(points[0], |best, &(k, r)| if r < best.1 { (k, r) } else { best })
        .0;
    Ok(KappaSweep { points, universal_kappa: kappa_sum / reps, argmin_kappa })
}

/// Mean L_p risk of block and term-by-term thresholding along an exponent
/// grid; `p` enters both the risk and the estimator's scale formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PSweepPoint {
    pub p: f64,
    pub block_risk: f64,
    pub termwise_risk: f64,
}

pub fn p_sweep(cfg: &ExperimentConfig, p_grid: &[f64]) -> Result<Vec<PSweepPoint>> {
    cfg.validate()?;
    if p_grid.is_empty() {
        return Err(Error::BadParameter("empty p grid".into()));
    }
    if p_grid.iter().any(|p| !(*p >= 1.0 && *p <= 4.0)) {
        return Err(Error::BadParameter("p grid must lie in [1, 4]".into()));
    }
    let spec = cfg.nspec.weight_spec()?;
    let base = cfg.estimator_on_axis();

    let rows = run_replications(cfg.replications, false, |r| -> Result<Vec<(f64, f64)>> {
        let data = replication_data(cfg, &spec, r)?;
        let mut out = Vec::with_capacity(p_grid.len());
        for &p in p_grid {
            let mut block_cfg = base.clone();
            block_cfg.p = p;
            let mut term_cfg = block_cfg.clone();
            term_cfg.block_length_override = Some(1);

            let g_block = plug_in(&estimate_density(&data.sample, &block_cfg)?, &data.cdf, &spec)?;
            let g_term = plug_in(&estimate_density(&data.sample, &term_cfg)?, &data.cdf, &spec)?;
            out.push((
                lp_risk(g_block.values(), &data.truth, p)?,
                lp_risk(g_term.values(), &data.truth, p)?,
            ));
        }
        Ok(out)
    });

    let reps = rows.len() as f64;
    let mut mean = vec![(0.0, 0.0); p_grid.len()];
    for row in rows {
        for (m, r) in mean.iter_mut().zip(row?) {
            m.0 += r.0 / reps;
            m.1 += r.1 / reps;
        }
    }
    Ok(p_grid
        .iter()
        .zip(mean)
        .map(|(&p, (b, t))| PSweepPoint { p, block_risk: b, termwise_risk: t })
        .collect())
}

/// Monte Carlo MISE of the kernel plug-in along a bandwidth grid; the
/// argmin is the oracle bandwidth the cross-validated choice is judged
/// against.
#[derive(Debug, Clone, PartialEq)]
pub struct HMiseScan {
    pub h_mise: f64,
    pub curve: Vec<(f64, f64)>,
}

pub fn h_mise_scan(cfg: &ExperimentConfig, h_grid: &[f64]) -> Result<HMiseScan> {
    cfg.validate()?;
    if h_grid.len() < 20 {
        return Err(Error::BadParameter(format!(
            "bandwidth grid needs >= 20 points, got {}",
            h_grid.len()
        )));
    }
    if h_grid.iter().any(|h| !(*h > 0.0) || !h.is_finite()) {
        return Err(Error::BadParameter("bandwidth grid values must be positive".into()));
    }
    let spec = cfg.nspec.weight_spec()?;

    let rows = run_replications(cfg.replications, false, |r| -> Result<Vec<f64>> {
        let data = replication_data(cfg, &spec, r)?;
        let mut out = Vec::with_capacity(h_grid.len());
        for &h in h_grid {
            let g_hat =
                plug_in(&kernel_density_on_grid(&data.sample, h, &data.grid)?, &data.cdf, &spec)?;
            out.push(lp_risk(g_hat.values(), &data.truth, 2.0)?);
        }
        Ok(out)
    });

    let reps = rows.len() as f64;
    let mut mean = vec![0.0; h_grid.len()];
    for row in rows {
        for (m, r) in mean.iter_mut().zip(row?) {
            *m += r / reps;
        }
    }
    let curve: Vec<(f64, f64)> = h_grid.iter().copied().zip(mean).collect();
    let h_mise = curve
        .iter()
        .fold(curve[0], |best, &(h, r)| if r < best.1 { (h, r) } else { best })
        .0;
    Ok(HMiseScan { h_mise, curve })
}
