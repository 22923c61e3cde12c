//! Empirical CDF, the weight families `w(u)`, and the plug-in step
//! `g_hat = w(F_hat) * f_hat`.

use crate::error::{Error, Result};
use crate::estimator::DensityEstimate;

/// Right-continuous empirical distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(sample: &[f64]) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::EmptySample);
        }
        if sample.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("sample".into()));
        }
        let mut sorted = sample.to_vec();
        sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite values"));
        Ok(EmpiricalCdf { sorted })
    }

    /// Fraction of sample points `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        let count = self.sorted.partition_point(|&v| v <= x);
        count as f64 / self.sorted.len() as f64
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }
}

/// Probability generating function of a count `N` on {1, 2, ...}:
/// `M(u) = E[u^N]` and its derivative `M'(u) = E[N u^{N-1}]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Pgf {
    /// Finite table: `mass[k] = P(N = k + 1)`.
    Table(Vec<f64>),
    /// Geometric on {1, 2, ...}: `P(N = k) = eta (1 - eta)^{k-1}`.
    Geometric { eta: f64 },
}

impl Pgf {
    pub fn table(mass: Vec<f64>) -> Result<Self> {
        if mass.is_empty() {
            return Err(Error::BadParameter("pgf table must be non-empty".into()));
        }
        if mass.iter().any(|&m| !(m >= 0.0) || !m.is_finite()) {
            return Err(Error::BadParameter("pgf masses must be non-negative".into()));
        }
        let sum: f64 = mass.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::BadParameter(format!("pgf masses sum to {sum}, expected 1")));
        }
        Ok(Pgf::Table(mass))
    }

    /// Point mass at `N = m`.
    pub fn constant(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadParameter("N must be >= 1".into()));
        }
        let mut mass = vec![0.0; m as usize];
        mass[m as usize - 1] = 1.0;
        Ok(Pgf::Table(mass))
    }

    pub fn geometric(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::BadParameter(format!("geometric eta must be in (0, 1], got {eta}")));
        }
        Ok(Pgf::Geometric { eta })
    }

    /// `M(u)` for `u` in [0, 1].
    pub fn value(&self, u: f64) -> f64 {
        match self {
            Pgf::Table(mass) => {
                // Horner over P(N = len), ..., P(N = 1), then one extra u.
                let inner = mass.iter().rev().fold(0.0, |acc, &m| acc * u + m);
                inner * u
            }
            Pgf::Geometric { eta } => eta * u / (1.0 - (1.0 - eta) * u),
        }
    }

    /// `M'(u)` for `u` in [0, 1].
    pub fn derivative(&self, u: f64) -> f64 {
        match self {
            Pgf::Table(mass) => mass
                .iter()
                .enumerate()
                .rev()
                .fold(0.0, |acc, (k, &m)| acc * u + (k + 1) as f64 * m),
            Pgf::Geometric { eta } => {
                let d = 1.0 - (1.0 - eta) * u;
                eta / (d * d)
            }
        }
    }
}

/// The weight families `w(u)` on [0, 1]; each integrates to one.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    /// Maximum of a fixed number `m` of draws: `w(u) = m u^{m-1}`.
    Degenerate { m: u32 },
    /// Density weight of the j-th order statistic out of m.
    OrderStatistic { m: u32, j: u32 },
    /// Maximum of a geometric number of draws.
    Geometric { eta: f64 },
    /// Maximum of `P + 1` draws with `P` Poisson(lambda).
    PoissonPlusOne { lambda: f64 },
    /// Pile-up reweighting `w(u) = 1 / M'(M^{-1}(1 - u))`.
    PileUp { pgf: Pgf },
}

impl WeightSpec {
    pub fn degenerate(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadParameter("degenerate weight needs m >= 1".into()));
        }
        Ok(WeightSpec::Degenerate { m })
    }

    pub fn order_statistic(m: u32, j: u32) -> Result<Self> {
        if m == 0 || j == 0 || j > m {
            return Err(Error::BadParameter(format!(
                "order statistic needs 1 <= j <= m, got j = {j}, m = {m}"
            )));
        }
        Ok(WeightSpec::OrderStatistic { m, j })
    }

    pub fn geometric(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) || !eta.is_finite() {
            return Err(Error::BadParameter(format!("geometric eta must be in (0, 1], got {eta}")));
        }
        Ok(WeightSpec::Geometric { eta })
    }

    pub fn poisson_plus_one(lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::BadParameter(format!("poisson lambda must be >= 0, got {lambda}")));
        }
        Ok(WeightSpec::PoissonPlusOne { lambda })
    }

    pub fn pile_up(pgf: Pgf) -> Self {
        WeightSpec::PileUp { pgf }
    }

    /// `w(u)`; only the pile-up family can fail (singular reweighting).
    pub fn eval(&self, u: f64) -> Result<f64> {
        debug_assert!((0.0..=1.0).contains(&u), "weight argument {u} outside [0, 1]");
        Ok(match self {
            WeightSpec::Degenerate { m } => *m as f64 * u.powi(*m as i32 - 1),
            WeightSpec::OrderStatistic { m, j } => {
                // m! / ((j-1)! (m-j)!) = m * C(m-1, j-1)
                let mut coeff = *m as f64;
                for i in 1..*j {
                    coeff *= (*m - *j + i) as f64 / i as f64;
                }
                coeff * u.powi(*j as i32 - 1) * (1.0 - u).powi((*m - *j) as i32)
            }
            WeightSpec::Geometric { eta } => {
                let d = 1.0 - u * (1.0 - eta);
                eta / (d * d)
            }
            WeightSpec::PoissonPlusOne { lambda } => {
                (lambda * (u - 1.0)).exp() * (1.0 + lambda * u)
            }
            WeightSpec::PileUp { pgf } => pileup_weight(pgf, u, 1e-12)?,
        })
    }

    /// Family name for CSV output.
    pub fn family(&self) -> &'static str {
        match self {
            WeightSpec::Degenerate { .. } => "degenerate",
            WeightSpec::OrderStatistic { .. } => "order-statistic",
            WeightSpec::Geometric { .. } => "geometric",
            WeightSpec::PoissonPlusOne { .. } => "poisson-plus-one",
            WeightSpec::PileUp { .. } => "pile-up",
        }
    }

    /// Parameter rendering for CSV output.
    pub fn param_string(&self) -> String {
        match self {
            WeightSpec::Degenerate { m } => format!("{m}"),
            WeightSpec::OrderStatistic { m, j } => format!("{m}.{j}"),
            WeightSpec::Geometric { eta } => format!("{eta}"),
            WeightSpec::PoissonPlusOne { lambda } => format!("{lambda}"),
            WeightSpec::PileUp { .. } => "pgf".into(),
        }
    }

    pub fn label(&self) -> String {
        format!("{}:{}", self.family(), self.param_string())
    }
}

/// Pile-up weight `1 / M'(M^{-1}(1 - u))`, inverting `M` by bisection on
/// [0, 1] (at most 60 halvings, stopping at bracket width `tol`).
pub fn pileup_weight(pgf: &Pgf, u: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::BadParameter(format!("bisection tolerance must be positive, got {tol}")));
    }
    debug_assert!((0.0..=1.0).contains(&u));
    let target = 1.0 - u;
    let v = if target <= 0.0 {
        0.0
    } else if target >= 1.0 {
        1.0
    } else {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..60 {
            if hi - lo <= tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if pgf.value(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let slope = pgf.derivative(v);
    if slope == 0.0 {
        return Err(Error::SingularWeight);
    }
    Ok(1.0 / slope)
}

/// Plug-in weighted density: `g_hat(t) = w(F_hat(t)) * f_hat(t)` on the grid
/// of `f_hat`. The CDF should come from the same sample as `f_hat`.
pub fn plug_in(
    f_hat: &DensityEstimate,
    cdf: &EmpiricalCdf,
    spec: &WeightSpec,
) -> Result<DensityEstimate> {
    let grid = *f_hat.grid();
    let mut weights = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        weights.push(spec.eval(cdf.eval(grid.point(k)))?);
    }
    Ok(f_hat.map_values(|k, v| weights[k] * v))
}
