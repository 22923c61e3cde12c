//! Compactly supported orthonormal wavelet filters and the periodized
//! pyramid transform.

mod taps;
mod transform;

pub use transform::{dwt_periodized, idwt_periodized, CoefficientPyramid};

use crate::error::{Error, Result};

/// An orthonormal two-channel filter pair, identified by its low-pass taps.
///
/// The high-pass taps follow from the quadrature-mirror rule
/// `g_k = (-1)^k h_{L-1-k}`, so only the low-pass side is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFilter {
    name: String,
    lowpass: Vec<f64>,
    vanishing_moments: u32,
}

impl WaveletFilter {
    /// Look up a filter by name: `haar`, `db2`..`db10` or `sym4`..`sym10`.
    pub fn new(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let (taps, moments): (&[f64], u32) = match lower.as_str() {
            "haar" | "db1" => (&HAAR, 1),
            "db2" => (&taps::DB2, 2),
            "db3" => (&taps::DB3, 3),
            "db4" => (&taps::DB4, 4),
            "db5" => (&taps::DB5, 5),
            "db6" => (&taps::DB6, 6),
            "db7" => (&taps::DB7, 7),
            "db8" => (&taps::DB8, 8),
            "db9" => (&taps::DB9, 9),
            "db10" => (&taps::DB10, 10),
            "sym4" => (&taps::SYM4, 4),
            "sym5" => (&taps::SYM5, 5),
            "sym6" => (&taps::SYM6, 6),
            "sym7" => (&taps::SYM7, 7),
            "sym8" => (&taps::SYM8, 8),
            "sym9" => (&taps::SYM9, 9),
            "sym10" => (&taps::SYM10, 10),
            _ => return Err(Error::UnknownFilter(name.to_string())),
        };
        Ok(WaveletFilter {
            name: lower,
            lowpass: taps.to_vec(),
            vanishing_moments: moments,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lowpass(&self) -> &[f64] {
        &self.lowpass
    }

    pub fn vanishing_moments(&self) -> u32 {
        self.vanishing_moments
    }

    pub fn len(&self) -> usize {
        self.lowpass.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// High-pass taps by the quadrature-mirror rule.
    pub fn highpass(&self) -> Vec<f64> {
        let l = self.lowpass.len();
        (0..l)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * self.lowpass[l - 1 - k]
            })
            .collect()
    }
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
const HAAR: [f64; 2] = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];

/// Every supported filter name, for enumeration in tests and docs.
pub const FILTER_NAMES: [&str; 17] = [
    "haar", "db2", "db3", "db4", "db5", "db6", "db7", "db8", "db9", "db10", "sym4", "sym5",
    "sym6", "sym7", "sym8", "sym9", "sym10",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn shift_inner(h: &[f64], m: usize) -> f64 {
        (0..h.len() - 2 * m).map(|k| h[k] * h[k + 2 * m]).sum()
    }

    #[test]
    fn unknown_name_is_a_configuration_error() {
        let err = WaveletFilter::new("sym3").unwrap_err();
        assert!(matches!(err, Error::UnknownFilter(_)));
        assert!(err.is_configuration());
    }

    #[test]
    fn haar_is_the_two_tap_filter() {
        let f = WaveletFilter::new("haar").unwrap();
        assert_eq!(f.lowpass(), &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        assert_eq!(f.highpass(), vec![FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
    }

    #[test]
    fn db2_solves_the_four_tap_system() {
        // Unique (up to reflection) 4-tap filter with orthonormality and two
        // vanishing moments; closed form via sqrt(3).
        let s3 = 3f64.sqrt();
        let c = 4.0 * 2f64.sqrt();
        let expect = [(1.0 + s3) / c, (3.0 + s3) / c, (3.0 - s3) / c, (1.0 - s3) / c];
        let f = WaveletFilter::new("db2").unwrap();
        for (a, b) in f.lowpass().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        // first-moment condition on the high-pass: sum (-1)^k k h_k = 0
        let m1: f64 = f
            .highpass()
            .iter()
            .enumerate()
            .map(|(k, g)| k as f64 * g)
            .sum();
        assert!(m1.abs() < 1e-12);
    }

    #[test]
    fn sym6_has_twelve_taps_and_six_vanishing_moments() {
        let f = WaveletFilter::new("sym6").unwrap();
        assert_eq!(f.len(), 12);
        let g = f.highpass();
        for m in 0..6 {
            let raw: f64 = g.iter().enumerate().map(|(k, v)| (k as f64).powi(m) * v).sum();
            let scale: f64 = g
                .iter()
                .enumerate()
                .map(|(k, v)| (k as f64).powi(m) * v.abs())
                .sum::<f64>()
                .max(1.0);
            assert!(raw.abs() / scale < 1e-10, "moment {m}: {raw}");
        }
    }

    #[test]
    fn all_filters_satisfy_the_orthonormal_identities() {
        for name in FILTER_NAMES {
            let f = WaveletFilter::new(name).unwrap();
            let h = f.lowpass();
            let sum: f64 = h.iter().sum();
            assert!((sum - 2f64.sqrt()).abs() < 1e-12, "{name}: sum");
            assert!((shift_inner(h, 0) - 1.0).abs() < 1e-12, "{name}: energy");
            for m in 1..h.len() / 2 {
                assert!(shift_inner(h, m).abs() < 1e-12, "{name}: shift {m}");
            }
        }
    }
}
