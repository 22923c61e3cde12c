//! Test densities, analytic CDFs, samplers, and the max-of-N oracle
//! sampler used to validate the weighted-density machinery.

use crate::error::{Error, Result};
use crate::weights::WeightSpec;
use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

/// Half support of the evaluation window; draws are rejected outside
/// [-B, B]. The rescaled test densities put all but ~1e-4 of their mass
/// well inside.
pub const HALF_SUPPORT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub weight: f64,
    pub mean: f64,
    pub sd: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Uniform { lo: f64, hi: f64 },
    Mixture(Vec<Component>),
}

/// A benchmark density: the flat density on [-3, 3] or a normal mixture
/// rescaled so that `min(mean - 3 sd) = -3` and `max(mean + 3 sd) = 3`.
///
/// Densities are truncated to the sampling window [-B, B] and renormalized
/// (mass outside is below 1e-4), so `pdf`/`cdf` describe exactly the law the
/// rejection sampler produces.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureModel {
    label: String,
    kind: Kind,
    window_mass: f64,
}

pub const MODEL_NAMES: [&str; 4] = ["uniform", "separated-bimodal", "kurtotic", "strongly-skewed"];

impl MixtureModel {
    /// Look up a benchmark density by name (case-insensitive; both
    /// `strongly-skewed` and `stronglyskewed` spellings are accepted).
    pub fn new(name: &str) -> Result<Self> {
        let key: String = name
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        let kind = match key.as_str() {
            "uniform" => Kind::Uniform { lo: -3.0, hi: 3.0 },
            "separatedbimodal" => Kind::Mixture(rescale(vec![
                Component { weight: 0.5, mean: -1.5, sd: 0.5 },
                Component { weight: 0.5, mean: 1.5, sd: 0.5 },
            ])),
            "kurtotic" => Kind::Mixture(rescale(vec![
                Component { weight: 2.0 / 3.0, mean: 0.0, sd: 1.0 },
                Component { weight: 1.0 / 3.0, mean: 0.0, sd: 0.1 },
            ])),
            "stronglyskewed" => Kind::Mixture(rescale(
                (0..8)
                    .map(|l| {
                        let s = (2.0f64 / 3.0).powi(l);
                        Component { weight: 0.125, mean: 3.0 * (s - 1.0), sd: s }
                    })
                    .collect(),
            )),
            _ => return Err(Error::UnknownModel(name.to_string())),
        };
        let label = match key.as_str() {
            "uniform" => "uniform",
            "separatedbimodal" => "separated-bimodal",
            "kurtotic" => "kurtotic",
            _ => "strongly-skewed",
        };
        let window_mass = raw_cdf(&kind, HALF_SUPPORT) - raw_cdf(&kind, -HALF_SUPPORT);
        Ok(MixtureModel { label: label.to_string(), kind, window_mass })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> Option<&[Component]> {
        match &self.kind {
            Kind::Uniform { .. } => None,
            Kind::Mixture(c) => Some(c),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x.abs() > HALF_SUPPORT {
            return 0.0;
        }
        let raw = match &self.kind {
            Kind::Uniform { lo, hi } => {
                if x >= *lo && x <= *hi {
                    1.0 / (hi - lo)
                } else {
                    0.0
                }
            }
            Kind::Mixture(comps) => comps
                .iter()
                .map(|c| c.weight * normal_pdf((x - c.mean) / c.sd) / c.sd)
                .sum(),
        };
        raw / self.window_mass
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= -HALF_SUPPORT {
            return 0.0;
        }
        if x >= HALF_SUPPORT {
            return 1.0;
        }
        let below = raw_cdf(&self.kind, x) - raw_cdf(&self.kind, -HALF_SUPPORT);
        (below / self.window_mass).clamp(0.0, 1.0)
    }

    /// Mean of the (truncated) density.
    pub fn mean(&self) -> f64 {
        match &self.kind {
            Kind::Uniform { lo, hi } => 0.5 * (lo + hi),
            Kind::Mixture(comps) => {
                // partial expectation of each component over the window
                let sum: f64 = comps
                    .iter()
                    .map(|c| {
                        let za = (-HALF_SUPPORT - c.mean) / c.sd;
                        let zb = (HALF_SUPPORT - c.mean) / c.sd;
                        c.weight
                            * (c.mean * (normal_cdf(zb) - normal_cdf(za))
                                - c.sd * (normal_pdf(zb) - normal_pdf(za)))
                    })
                    .sum();
                sum / self.window_mass
            }
        }
    }

    fn draw_unbounded<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.kind {
            Kind::Uniform { lo, hi } => rng.gen_range(*lo..*hi),
            Kind::Mixture(comps) => {
                let u: f64 = rng.gen();
                let mut acc = 0.0;
                let mut chosen = comps.len() - 1;
                for (i, c) in comps.iter().enumerate() {
                    acc += c.weight;
                    if u < acc {
                        chosen = i;
                        break;
                    }
                }
                let z: f64 = StandardNormal.sample(rng);
                comps[chosen].mean + comps[chosen].sd * z
            }
        }
    }

    /// One draw, rejecting the (very unlikely) values outside the window.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut rejected = 0u32;
        loop {
            let x = self.draw_unbounded(rng);
            if x.abs() <= HALF_SUPPORT {
                if rejected > 0 {
                    log::debug!("{}: redrew {rejected} out-of-window draws", self.label);
                }
                return x;
            }
            rejected += 1;
        }
    }
}

/// Rescale mixture components so the 3-sigma envelope is exactly [-3, 3].
fn rescale(comps: Vec<Component>) -> Vec<Component> {
    let lo = comps.iter().map(|c| c.mean - 3.0 * c.sd).fold(f64::INFINITY, f64::min);
    let hi = comps.iter().map(|c| c.mean + 3.0 * c.sd).fold(f64::NEG_INFINITY, f64::max);
    let a = 6.0 / (hi - lo);
    let c0 = -3.0 - a * lo;
    comps
        .into_iter()
        .map(|c| Component { weight: c.weight, mean: a * c.mean + c0, sd: a * c.sd })
        .collect()
}

fn raw_cdf(kind: &Kind, x: f64) -> f64 {
    match kind {
        Kind::Uniform { lo, hi } => ((x - lo) / (hi - lo)).clamp(0.0, 1.0),
        Kind::Mixture(comps) => comps
            .iter()
            .map(|c| c.weight * normal_cdf((x - c.mean) / c.sd))
            .sum(),
    }
}

fn normal_pdf(z: f64) -> f64 {
    const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    FRAC_1_SQRT_2PI * (-0.5 * z * z).exp()
}

fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// i.i.d. draws from the model (window-rejected, see [`MixtureModel::draw`]).
pub fn sample_model<R: Rng + ?Sized>(model: &MixtureModel, n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| model.draw(rng)).collect()
}

/// Law of the random count `N` in the max-of-N experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NSpec {
    Degenerate { m: u32 },
    Geometric { eta: f64 },
    PoissonPlusOne { lambda: f64 },
}

impl NSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (family, param) = text
            .split_once(':')
            .ok_or_else(|| Error::BadParameter(format!("expected family:param, got `{text}`")))?;
        let parse_f64 = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| Error::BadParameter(format!("bad numeric parameter `{s}`")))
        };
        let spec = match family.to_ascii_lowercase().as_str() {
            "degenerate" => {
                let m = param
                    .parse::<u32>()
                    .map_err(|_| Error::BadParameter(format!("bad integer parameter `{param}`")))?;
                NSpec::Degenerate { m }
            }
            "geometric" => NSpec::Geometric { eta: parse_f64(param)? },
            "poisson-plus-one" | "poisson+1" | "poissonplusone" => {
                NSpec::PoissonPlusOne { lambda: parse_f64(param)? }
            }
            other => {
                return Err(Error::BadParameter(format!(
                    "unknown N family `{other}` (expected degenerate, geometric or poisson-plus-one)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            NSpec::Degenerate { m } if *m == 0 => {
                Err(Error::BadParameter("degenerate N needs m >= 1".into()))
            }
            NSpec::Geometric { eta } if !(*eta > 0.0 && *eta <= 1.0) => {
                Err(Error::BadParameter(format!("geometric eta must be in (0, 1], got {eta}")))
            }
            NSpec::PoissonPlusOne { lambda } if !(*lambda >= 0.0 && lambda.is_finite()) => {
                Err(Error::BadParameter(format!("poisson lambda must be >= 0, got {lambda}")))
            }
            _ => Ok(()),
        }
    }

    /// The weight family of `max(X_1, ..., X_N)` for this count law.
    pub fn weight_spec(&self) -> Result<WeightSpec> {
        match self {
            NSpec::Degenerate { m } => WeightSpec::degenerate(*m),
            NSpec::Geometric { eta } => WeightSpec::geometric(*eta),
            NSpec::PoissonPlusOne { lambda } => WeightSpec::poisson_plus_one(*lambda),
        }
    }

    /// CDF transform of the maximum: `P(max <= x) = M(F(x))`.
    pub fn pgf_value(&self, f: f64) -> f64 {
        match self {
            NSpec::Degenerate { m } => f.powi(*m as i32),
            NSpec::Geometric { eta } => eta * f / (1.0 - (1.0 - eta) * f),
            NSpec::PoissonPlusOne { lambda } => f * (lambda * (f - 1.0)).exp(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match self {
            NSpec::Degenerate { m } => *m as u64,
            NSpec::Geometric { eta } => {
                if *eta >= 1.0 {
                    return 1;
                }
                let mut u: f64 = rng.gen();
                while u <= 0.0 {
                    u = rng.gen();
                }
                (u.ln() / (1.0 - eta).ln()).ceil().max(1.0) as u64
            }
            NSpec::PoissonPlusOne { lambda } => {
                if *lambda == 0.0 {
                    return 1;
                }
                let p: f64 = Poisson::new(*lambda).expect("validated lambda").sample(rng);
                1 + p as u64
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            NSpec::Degenerate { m } => format!("degenerate:{m}"),
            NSpec::Geometric { eta } => format!("geometric:{eta}"),
            NSpec::PoissonPlusOne { lambda } => format!("poisson-plus-one:{lambda}"),
        }
    }
}

/// The target weighted density `g(x) = w(F(x)) f(x)` with analytic `F`.
pub fn true_g(model: &MixtureModel, spec: &WeightSpec, x: f64) -> Result<f64> {
    Ok(spec.eval(model.cdf(x))? * model.pdf(x))
}

/// Draws of `max(X_1, ..., X_N)` with `N` from `nspec`; the empirical law of
/// these maxima is the independent check on [`true_g`].
pub fn sample_max_of_n<R: Rng + ?Sized>(
    model: &MixtureModel,
    nspec: &NSpec,
    draws: usize,
    rng: &mut R,
) -> Vec<f64> {
    (0..draws)
        .map(|_| {
            let count = nspec.sample(rng);
            let mut best = f64::NEG_INFINITY;
            for _ in 0..count {
                best = best.max(model.draw(rng));
            }
            best
        })
        .collect()
}
