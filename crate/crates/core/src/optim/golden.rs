use super::{OptimResult, MAX_ITER_1D};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol` (or after
/// [`MAX_ITER_1D`] iterations, flagged as not converged).
pub fn golden_section_1d<F>(f: F, bracket: (f64, f64), tol: f64) -> OptimResult
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if bracket.0 <= bracket.1 {
        bracket
    } else {
        (bracket.1, bracket.0)
    };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while b - a > tol && iterations < MAX_ITER_1D {
        iterations += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    OptimResult {
        point: vec![x],
        value: f(x),
        converged: b - a <= tol,
        iterations,
        grad_norm: b - a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let r = golden_section_1d(|x| (x - 3.0).powi(2), (0.0, 10.0), 1e-9);
        assert!(r.converged);
        assert!((r.point[0] - 3.0).abs() < 1e-8);
    }

    #[test]
    fn kink() {
        let r = golden_section_1d(|x: f64| (x - 1.0).abs(), (0.0, 2.0), 1e-9);
        assert!((r.point[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn reversed_bracket_and_width() {
        let r = golden_section_1d(|x| (x + 1.0).powi(2), (4.0, -4.0), 1e-6);
        assert!(r.grad_norm <= 1e-6);
        assert!((r.point[0] + 1.0).abs() < 1e-6);
    }
}
