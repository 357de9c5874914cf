use super::OptimResult;
use crate::error::{Error, Result};

/// Finds a root of `f` starting from `x0`.
///
/// The derivative is taken by central differences. When `f` changes sign
/// over `bracket` the iteration keeps a shrinking sign-change bracket and
/// replaces any Newton step that would leave it by a bisection step. Without
/// a sign change the iteration is plain Newton restricted to `bracket`; a
/// step outside it is reported as [`Error::NoSignChange`].
///
/// Converges when `|f(x)| ≤ tol`, or when a sign-change bracket has shrunk
/// to a few ulps around `x`.
pub fn newton_root_1d<F>(
    f: F,
    x0: f64,
    tol: f64,
    max_iter: usize,
    bracket: (f64, f64),
) -> Result<OptimResult>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidBounds(format!(
            "bracket [{lo}, {hi}] is not a finite interval"
        )));
    }
    if !(lo..=hi).contains(&x0) {
        return Err(Error::InvalidBounds(format!(
            "start {x0} lies outside [{lo}, {hi}]"
        )));
    }

    let f_lo = f(lo);
    let f_hi = f(hi);
    let bracketed = f_lo.is_finite() && f_hi.is_finite() && (f_lo < 0.0) != (f_hi < 0.0);
    let lo_negative = f_lo < 0.0;

    let done = |x: f64, fx: f64, converged: bool, iterations: usize| OptimResult {
        point: vec![x],
        value: fx,
        converged,
        iterations,
        grad_norm: fx.abs(),
    };

    let mut x = x0;
    let mut fx = f(x);
    for iter in 1..=max_iter {
        if fx.abs() <= tol {
            return Ok(done(x, fx, true, iter - 1));
        }
        if bracketed && fx.is_finite() {
            if (fx < 0.0) == lo_negative {
                lo = x;
            } else {
                hi = x;
            }
            if hi - lo <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
                return Ok(done(x, fx, true, iter - 1));
            }
        }

        let h = 6e-6 * x.abs().max(1e-3);
        let slope = (f(x + h) - f(x - h)) / (2.0 * h);
        let mut next = x - fx / slope;
        let inside = next.is_finite() && next > lo && next < hi;
        if !inside || !fx.is_finite() {
            if bracketed {
                next = 0.5 * (lo + hi);
            } else {
                return Err(Error::NoSignChange {
                    lo: bracket.0,
                    hi: bracket.1,
                });
            }
        }
        x = next;
        fx = f(x);
    }
    Ok(done(x, fx, fx.abs() <= tol, max_iter))
}
