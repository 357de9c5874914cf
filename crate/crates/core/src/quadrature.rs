//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the center.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_SUBINTERVALS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    (value, err)
}

/// `∫_a^b f(t) dt` to within `max(abs_tol, rel_tol·|I|)`.
///
/// Bisects the subinterval with the largest error estimate until the total
/// estimate meets the tolerance; fails with
/// [`Error::QuadratureNonConvergence`] after 500 subintervals.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let (v, e) = gk15(&f, a, b);
    let mut pieces = vec![(a, b, v, e)];
    let mut evaluations = 15;
    loop {
        let value: f64 = pieces.iter().map(|p| p.2).sum();
        let error: f64 = pieces.iter().map(|p| p.3).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureNonConvergence { achieved: error });
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Integral {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        if pieces.len() >= MAX_SUBINTERVALS {
            return Err(Error::QuadratureNonConvergence { achieved: error });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Interval cannot be split further in floating point.
            return Err(Error::QuadratureNonConvergence { achieved: error });
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        evaluations += 30;
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|t| t.powi(5) - 2.0 * t, 0.0, 2.0, 1e-12, 0.0).unwrap();
        assert!((r.value - (64.0 / 6.0 - 4.0)).abs() < 1e-13);
    }

    #[test]
    fn t_squared_exp() {
        // ∫₀¹ t² e^{-t} dt = 2 − 5/e
        let r = integrate(|t| t * t * (-t).exp(), 0.0, 1.0, 1e-12, 1e-15).unwrap();
        assert!((r.value - (2.0 - 5.0 * (-1.0f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn kink_needs_refinement() {
        let r = integrate(|t: f64| (t - 0.3).abs(), 0.0, 1.0, 1e-10, 1e-14).unwrap();
        assert!((r.value - (0.045 + 0.245)).abs() < 1e-10);
        assert!(r.evaluations > 15);
    }

    #[test]
    fn reports_nonconvergence() {
        let err = integrate(|t: f64| 1.0 / t.sqrt() * (1.0 / t).sin(), 1e-300, 1.0, 1e-14, 0.0);
        assert!(matches!(err, Err(Error::QuadratureNonConvergence { .. })));
    }
}
