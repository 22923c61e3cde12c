//! Periodized forward/inverse pyramid transform.
//!
//! The input vector of length `2^J` is read as the fine-level scaling
//! coefficients; analysis peels off one detail level at a time down to the
//! requested coarse level with periodic (mod N) boundary handling. The
//! synthesis pass is the exact transpose, so the round trip is the identity
//! up to floating-point error.

use super::WaveletFilter;
use crate::error::{Error, Result};

/// Multilevel coefficient set: one coarse scaling vector plus one detail
/// vector per level `j = coarse_level .. fine_level - 1` (2^j entries each).
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientPyramid {
    coarse_level: usize,
    fine_level: usize,
    approx: Vec<f64>,
    details: Vec<Vec<f64>>,
}

impl CoefficientPyramid {
    pub fn new(coarse_level: usize, fine_level: usize, approx: Vec<f64>, details: Vec<Vec<f64>>) -> Result<Self> {
        if coarse_level > fine_level {
            return Err(Error::PyramidShape(format!(
                "coarse level {coarse_level} above fine level {fine_level}"
            )));
        }
        if approx.len() != 1usize << coarse_level {
            return Err(Error::PyramidShape(format!(
                "approx length {} != 2^{coarse_level}",
                approx.len()
            )));
        }
        if details.len() != fine_level - coarse_level {
            return Err(Error::PyramidShape(format!(
                "expected {} detail levels, got {}",
                fine_level - coarse_level,
                details.len()
            )));
        }
        for (idx, d) in details.iter().enumerate() {
            let level = coarse_level + idx;
            if d.len() != 1usize << level {
                return Err(Error::PyramidShape(format!(
                    "detail level {level} has {} entries, expected {}",
                    d.len(),
                    1usize << level
                )));
            }
        }
        Ok(CoefficientPyramid { coarse_level, fine_level, approx, details })
    }

    pub fn coarse_level(&self) -> usize {
        self.coarse_level
    }

    pub fn fine_level(&self) -> usize {
        self.fine_level
    }

    /// Scaling coefficients at the coarse level.
    pub fn approx(&self) -> &[f64] {
        &self.approx
    }

    /// Detail coefficients at `level`, if the pyramid holds that level.
    pub fn detail(&self, level: usize) -> Option<&[f64]> {
        if level < self.coarse_level || level >= self.fine_level {
            None
        } else {
            Some(&self.details[level - self.coarse_level])
        }
    }

    pub fn detail_mut(&mut self, level: usize) -> Option<&mut Vec<f64>> {
        if level < self.coarse_level || level >= self.fine_level {
            None
        } else {
            Some(&mut self.details[level - self.coarse_level])
        }
    }

    /// Detail levels present, coarse to fine.
    pub fn detail_levels(&self) -> impl Iterator<Item = usize> {
        self.coarse_level..self.fine_level
    }

    /// Sum of squares over every stored coefficient.
    pub fn energy(&self) -> f64 {
        let a: f64 = self.approx.iter().map(|v| v * v).sum();
        let d: f64 = self.details.iter().flatten().map(|v| v * v).sum();
        a + d
    }

    /// A copy with every detail level zeroed (the coarse projection).
    pub fn approx_only(&self) -> Self {
        let mut out = self.clone();
        for d in &mut out.details {
            d.iter_mut().for_each(|v| *v = 0.0);
        }
        out
    }
}

/// Forward periodized transform of a length-`2^J` signal down to
/// `coarse_level`.
pub fn dwt_periodized(
    signal: &[f64],
    filter: &WaveletFilter,
    coarse_level: usize,
) -> Result<CoefficientPyramid> {
    let len = signal.len();
    let min = 1usize << (coarse_level + 1);
    if len < min || !len.is_power_of_two() {
        return Err(Error::BadSignalLength { len, min });
    }
    let fine_level = len.trailing_zeros() as usize;

    let h = filter.lowpass();
    let g = filter.highpass();
    let mut approx = signal.to_vec();
    let mut details_fine_to_coarse = Vec::with_capacity(fine_level - coarse_level);

    let mut level = fine_level;
    while level > coarse_level {
        let n = approx.len();
        let half = n / 2;
        let mut next = vec![0.0; half];
        let mut detail = vec![0.0; half];
        for k in 0..half {
            let mut a = 0.0;
            let mut d = 0.0;
            for (m, (&hm, &gm)) in h.iter().zip(g.iter()).enumerate() {
                let x = approx[(2 * k + m) % n];
                a += hm * x;
                d += gm * x;
            }
            next[k] = a;
            detail[k] = d;
        }
        approx = next;
        details_fine_to_coarse.push(detail);
        level -= 1;
    }

    details_fine_to_coarse.reverse();
    CoefficientPyramid::new(coarse_level, fine_level, approx, details_fine_to_coarse)
}

/// Inverse periodized transform; returns a vector of length `2^fine_level`.
pub fn idwt_periodized(pyramid: &CoefficientPyramid, filter: &WaveletFilter) -> Result<Vec<f64>> {
    let h = filter.lowpass();
    let g = filter.highpass();
    let mut approx = pyramid.approx.to_vec();

    for detail in &pyramid.details {
        let half = approx.len();
        if detail.len() != half {
            return Err(Error::PyramidShape(format!(
                "detail length {} does not match approx length {half}",
                detail.len()
            )));
        }
        let n = 2 * half;
        let mut next = vec![0.0; n];
        for k in 0..half {
            let a = approx[k];
            let d = detail[k];
            for (m, (&hm, &gm)) in h.iter().zip(g.iter()).enumerate() {
                next[(2 * k + m) % n] += hm * a + gm * d;
            }
        }
        approx = next;
    }
    Ok(approx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::FILTER_NAMES;
    use rand::Rng;

    fn rng() -> impl Rng {
        crate::stream::stream(0x5eed, 11)
    }

    #[test]
    fn rejects_non_power_of_two_lengths() {
        let f = WaveletFilter::new("haar").unwrap();
        for len in [0usize, 3, 6, 100] {
            let sig = vec![1.0; len];
            assert!(matches!(
                dwt_periodized(&sig, &f, 0),
                Err(Error::BadSignalLength { .. })
            ));
        }
        // length 2 is too short for coarse level 1
        assert!(dwt_periodized(&[1.0, 2.0], &f, 1).is_err());
    }

    #[test]
    fn constant_signal_has_zero_details() {
        for name in FILTER_NAMES {
            let f = WaveletFilter::new(name).unwrap();
            let sig = vec![0.7; 64];
            let pyr = dwt_periodized(&sig, &f, 2).unwrap();
            for level in pyr.detail_levels() {
                for &v in pyr.detail(level).unwrap() {
                    assert!(v.abs() < 1e-12, "{name} level {level}: {v}");
                }
            }
        }
    }

    #[test]
    fn haar_one_step_matches_hand_computation() {
        let f = WaveletFilter::new("haar").unwrap();
        let pyr = dwt_periodized(&[1.0, 1.0, 1.0, 1.0], &f, 1).unwrap();
        let s2 = 2f64.sqrt();
        assert!((pyr.approx()[0] - s2).abs() < 1e-15);
        assert!((pyr.approx()[1] - s2).abs() < 1e-15);
        assert_eq!(pyr.detail(1).unwrap(), &[0.0, 0.0]);

        // and back
        let rec = idwt_periodized(&pyr, &f).unwrap();
        for (r, x) in rec.iter().zip([1.0, 1.0, 1.0, 1.0]) {
            assert!((r - x).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_pyramid_reconstructs_to_zero() {
        let f = WaveletFilter::new("db3").unwrap();
        let pyr = CoefficientPyramid::new(1, 4, vec![0.0; 2], vec![vec![0.0; 2], vec![0.0; 4], vec![0.0; 8]])
            .unwrap();
        let rec = idwt_periodized(&pyr, &f).unwrap();
        assert!(rec.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn round_trip_parseval_and_linearity() {
        let mut rng = rng();
        for name in FILTER_NAMES {
            let f = WaveletFilter::new(name).unwrap();
            let x: Vec<f64> = (0..512).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let y: Vec<f64> = (0..512).map(|_| rng.gen_range(-1.0..1.0)).collect();

            let px = dwt_periodized(&x, &f, 3).unwrap();
            let rec = idwt_periodized(&px, &f).unwrap();
            let max_err = x
                .iter()
                .zip(&rec)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(max_err < 1e-10, "{name}: round trip {max_err}");

            let ex: f64 = x.iter().map(|v| v * v).sum();
            assert!((ex - px.energy()).abs() < 1e-10, "{name}: parseval");

            // dwt(2x + 3y) = 2 dwt(x) + 3 dwt(y)
            let z: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 2.0 * a + 3.0 * b).collect();
            let pz = dwt_periodized(&z, &f, 3).unwrap();
            let py = dwt_periodized(&y, &f, 3).unwrap();
            for (za, (xa, ya)) in pz.approx().iter().zip(px.approx().iter().zip(py.approx())) {
                assert!((za - (2.0 * xa + 3.0 * ya)).abs() < 1e-10, "{name}: linearity");
            }
            for level in pz.detail_levels() {
                for (zd, (xd, yd)) in pz
                    .detail(level)
                    .unwrap()
                    .iter()
                    .zip(px.detail(level).unwrap().iter().zip(py.detail(level).unwrap()))
                {
                    assert!((zd - (2.0 * xd + 3.0 * yd)).abs() < 1e-10, "{name}: linearity");
                }
            }
        }
    }

    #[test]
    fn signal_sum_is_carried_by_the_approx_coefficients() {
        // Zeroing any subset of detail coefficients leaves sum(signal)
        // unchanged: synthesis wavelets have zero mean.
        let mut rng = rng();
        for name in ["haar", "db4", "sym6"] {
            let f = WaveletFilter::new(name).unwrap();
            let x: Vec<f64> = (0..256).map(|_| rng.gen_range(0.0..2.0)).collect();
            let sum: f64 = x.iter().sum();
            let mut pyr = dwt_periodized(&x, &f, 2).unwrap();
            // zero an arbitrary subset: all of level 5, half of level 3
            if let Some(d) = pyr.detail_mut(5) {
                d.iter_mut().for_each(|v| *v = 0.0);
            }
            if let Some(d) = pyr.detail_mut(3) {
                for v in d.iter_mut().step_by(2) {
                    *v = 0.0;
                }
            }
            let rec = idwt_periodized(&pyr, &f).unwrap();
            let rec_sum: f64 = rec.iter().sum();
            assert!((rec_sum - sum).abs() < 1e-10, "{name}: {rec_sum} vs {sum}");
        }
    }
}
