//! Adaptive wavelet block hard-thresholding density estimator.
//!
//! Pipeline: rescale the sample to [0, 1], histogram it at the finest dyadic
//! level, run the periodized pyramid down to the primary level, screen whole
//! blocks of detail coefficients against `kappa / sqrt(n)`, reconstruct, and
//! map back to density scale on the evaluation grid.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::wavelet::{dwt_periodized, idwt_periodized, CoefficientPyramid, WaveletFilter};

/// Threshold level selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KappaMode {
    /// Scale estimated from the finest detail level (median absolute value /
    /// 0.6745), times sqrt(2 log n).
    Universal,
    /// A fixed multiplier `kappa >= 0`.
    Fixed(f64),
}

/// What to do with sample points outside `[-b, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutOfRangePolicy {
    Reject,
    Clamp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    /// Risk exponent; also drives the block length and primary level formulas.
    pub p: f64,
    /// Grid resolution J; the density is evaluated at T = 2^J points.
    pub grid_levels: u32,
    /// Half support b; samples must lie in [-b, b].
    pub half_support: f64,
    pub filter: WaveletFilter,
    /// Fixed primary level, overriding the formula value.
    pub coarse_level_override: Option<usize>,
    pub kappa_mode: KappaMode,
    /// Fixed block length, overriding the formula value (1 = term-by-term).
    pub block_length_override: Option<usize>,
    pub clip_nonnegative: bool,
    pub renormalize: bool,
    pub out_of_range: OutOfRangePolicy,
}

impl Default for EstimatorConfig {
    /// The simulation defaults: sym6, T = 512, b = 4, primary level 3,
    /// universal threshold, raw output (no clip, no renormalization).
    fn default() -> Self {
        EstimatorConfig {
            p: 2.0,
            grid_levels: 9,
            half_support: 4.0,
            filter: WaveletFilter::new("sym6").expect("built-in filter"),
            coarse_level_override: Some(3),
            kappa_mode: KappaMode::Universal,
            block_length_override: None,
            clip_nonnegative: false,
            renormalize: false,
            out_of_range: OutOfRangePolicy::Reject,
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 1.0) {
            return Err(Error::BadParameter(format!("p must be >= 1, got {}", self.p)));
        }
        if !(self.half_support > 0.0) {
            return Err(Error::BadParameter(format!(
                "half support must be positive, got {}",
                self.half_support
            )));
        }
        if self.grid_levels < 4 {
            return Err(Error::BadParameter(format!(
                "grid levels must be >= 4, got {}",
                self.grid_levels
            )));
        }
        if let KappaMode::Fixed(v) = self.kappa_mode {
            if !(v >= 0.0) {
                return Err(Error::BadParameter(format!("fixed kappa must be >= 0, got {v}")));
            }
        }
        if let Some(l) = self.block_length_override {
            if l == 0 {
                return Err(Error::BadParameter("block length must be >= 1".into()));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.half_support, self.grid_levels)
    }
}

/// Scales actually used by a fitted estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleInfo {
    /// Primary (coarsest retained) resolution level.
    pub coarse_level: usize,
    /// Finest detail level kept by the screen; everything above is zeroed.
    pub max_kept_level: usize,
    pub block_length: usize,
    pub kappa: f64,
    pub n: usize,
}

/// A density sampled on the evaluation grid, with the thresholded
/// coefficients and scale record when it came from the wavelet pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate {
    grid: Grid,
    values: Vec<f64>,
    pyramid_kept: Option<CoefficientPyramid>,
    scales: Option<ScaleInfo>,
}

impl DensityEstimate {
    pub fn from_grid_values(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { left: values.len(), right: grid.len() });
        }
        Ok(DensityEstimate { grid, values, pyramid_kept: None, scales: None })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn pyramid_kept(&self) -> Option<&CoefficientPyramid> {
        self.pyramid_kept.as_ref()
    }

    pub fn scales(&self) -> Option<&ScaleInfo> {
        self.scales.as_ref()
    }

    /// Integral over [-b, b] by the grid quadrature.
    pub fn integral(&self) -> f64 {
        self.grid.integral(&self.values)
    }

    /// Pointwise map, keeping grid and scale metadata.
    pub(crate) fn map_values<F: Fn(usize, f64) -> f64>(&self, f: F) -> DensityEstimate {
        let values = self.values.iter().enumerate().map(|(k, &v)| f(k, v)).collect();
        DensityEstimate {
            grid: self.grid,
            values,
            pyramid_kept: self.pyramid_kept.clone(),
            scales: self.scales,
        }
    }
}

/// Resolution scales and block length for sample size `n` and exponent `p`:
/// primary level `floor((max(p,2)/2) log2(log n))`, last screened level
/// `floor(log2(n / log n))`, block length `floor((log n)^{max(p,2)/2})`,
/// with natural logarithms.
pub fn scale_parameters(n: usize, p: f64) -> Result<(usize, usize, usize)> {
    if !(p >= 1.0) {
        return Err(Error::BadParameter(format!("p must be >= 1, got {p}")));
    }
    if n < 8 {
        return Err(Error::SampleTooSmall {
            n,
            detail: "scale formulas need n >= 8".into(),
        });
    }
    let ln = (n as f64).ln();
    let half_p = p.max(2.0) / 2.0;
    let j1 = (half_p * ln.log2()).floor() as usize;
    let j2 = ((n as f64 / ln).log2()).floor() as usize;
    let block = ln.powf(half_p).floor() as usize;
    if j2 < j1 {
        return Err(Error::SampleTooSmall {
            n,
            detail: format!("finest level {j1} exceeds coarsest level {j2} at p = {p}"),
        });
    }
    Ok((j1, j2, block.max(1)))
}

/// Fine-level scaling coefficients of the sample histogram: after mapping
/// `x -> (x + b) / 2b`, coefficient `k` is `2^{J/2} n_k / n` with `n_k` the
/// count in bin `[k/T, (k+1)/T)`.
pub fn empirical_fine_coefficients(sample: &[f64], config: &EstimatorConfig) -> Result<Vec<f64>> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let t = 1usize << config.grid_levels;
    let b = config.half_support;
    let mut counts = vec![0u64; t];
    for &x in sample {
        if !x.is_finite() {
            return Err(Error::NonFinite("sample".into()));
        }
        let x = if x.abs() > b {
            match config.out_of_range {
                OutOfRangePolicy::Reject => return Err(Error::OutOfRange { value: x, bound: b }),
                OutOfRangePolicy::Clamp => x.clamp(-b, b),
            }
        } else {
            x
        };
        let u = (x + b) / (2.0 * b);
        let bin = ((u * t as f64) as usize).min(t - 1);
        counts[bin] += 1;
    }
    let scale = (t as f64).sqrt() / sample.len() as f64;
    Ok(counts.iter().map(|&c| c as f64 * scale).collect())
}

/// Universal threshold level `sigma_hat * sqrt(2 log n)`, with `sigma_hat`
/// the root-mean-square of the finest detail level rescaled to the
/// sqrt(n)-standardized coefficient scale.
///
/// The finest level is essentially pure sampling noise, and the mean square
/// of its empirical coefficients times `n` concentrates near the average
/// local noise variance (close to 1 for any density expanded on [0, 1]), so
/// this scale stays calibrated even when sparse regions produce many
/// exactly-zero coefficients. A median-absolute-deviation scale collapses
/// there: on peaked densities more than half of the finest coefficients can
/// be identically zero.
pub fn universal_kappa(pyramid: &CoefficientPyramid, n: usize) -> Result<f64> {
    let finest = pyramid
        .detail(pyramid.fine_level().wrapping_sub(1))
        .filter(|d| d.len() >= 8)
        .ok_or_else(|| {
            Error::PyramidShape("universal threshold needs a detail level with >= 8 coefficients".into())
        })?;
    let mean_square = finest.iter().map(|b| b * b).sum::<f64>() / finest.len() as f64;
    let sigma = (n as f64 * mean_square).sqrt();
    Ok(sigma * (2.0 * (n as f64).ln()).sqrt())
}

fn block_mean(block: &[f64], p: f64) -> f64 {
    let len = block.len() as f64;
    if p == 2.0 {
        (block.iter().map(|v| v * v).sum::<f64>() / len).sqrt()
    } else {
        (block.iter().map(|v| v.abs().powf(p)).sum::<f64>() / len).powf(1.0 / p)
    }
}

/// Block hard thresholding: within each detail level up to `max_kept_level`,
/// partition indices into consecutive blocks of `block_length` (the last
/// block keeps its true length) and zero every block whose l_p mean falls
/// below `kappa / sqrt(n)`. Levels above `max_kept_level` are zeroed
/// entirely; the approx coefficients pass through untouched.
pub fn block_threshold(
    pyramid: &CoefficientPyramid,
    n: usize,
    p: f64,
    block_length: usize,
    kappa: f64,
    max_kept_level: usize,
) -> CoefficientPyramid {
    debug_assert!(block_length >= 1);
    debug_assert!(kappa >= 0.0);
    let threshold = kappa / (n as f64).sqrt();
    let mut out = pyramid.clone();
    for level in pyramid.detail_levels() {
        let detail = out.detail_mut(level).expect("level in range");
        if level > max_kept_level {
            detail.iter_mut().for_each(|v| *v = 0.0);
            continue;
        }
        for block in detail.chunks_mut(block_length) {
            if !(block_mean(block, p) >= threshold) {
                block.iter_mut().for_each(|v| *v = 0.0);
            }
        }
    }
    out
}

/// Fit the block-thresholded density estimate on the evaluation grid.
pub fn estimate_density(sample: &[f64], config: &EstimatorConfig) -> Result<DensityEstimate> {
    config.validate()?;
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = sample.len();
    let (j1_formula, j2_formula, block_formula) = scale_parameters(n, config.p)?;
    let coarse = config.coarse_level_override.unwrap_or(j1_formula);
    // the pyramid cannot hold levels at or above J
    let max_kept = j2_formula.min(config.grid_levels as usize - 1);
    if max_kept < coarse {
        return Err(Error::SampleTooSmall {
            n,
            detail: format!("coarsest screened level {max_kept} below primary level {coarse}"),
        });
    }
    let block_length = config.block_length_override.unwrap_or(block_formula);

    let fine = empirical_fine_coefficients(sample, config)?;
    let pyramid = dwt_periodized(&fine, &config.filter, coarse)?;
    let kappa = match config.kappa_mode {
        KappaMode::Universal => universal_kappa(&pyramid, n)?,
        KappaMode::Fixed(v) => v,
    };
    let kept = block_threshold(&pyramid, n, config.p, block_length, kappa, max_kept);
    let reconstruction = idwt_periodized(&kept, &config.filter)?;

    let t = reconstruction.len() as f64;
    let to_density = t.sqrt() / (2.0 * config.half_support);
    let mut values: Vec<f64> = reconstruction.iter().map(|c| c * to_density).collect();

    if config.clip_nonnegative {
        values.iter_mut().for_each(|v| *v = v.max(0.0));
    }
    let grid = config.grid()?;
    if config.renormalize {
        let mass = grid.integral(&values);
        if mass <= f64::EPSILON {
            return Err(Error::DegenerateSample(format!(
                "cannot renormalize estimate with mass {mass}"
            )));
        }
        values.iter_mut().for_each(|v| *v /= mass);
    }

    Ok(DensityEstimate {
        grid,
        values,
        pyramid_kept: Some(kept),
        scales: Some(ScaleInfo {
            coarse_level: coarse,
            max_kept_level: max_kept,
            block_length,
            kappa,
            n,
        }),
    })
}
