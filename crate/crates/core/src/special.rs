//! Overflow-free elementary functions shared by the objectives.

/// `ln(1 + e^x)` without overflow.
#[inline]
pub fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// `1 / (1 + e^{-x})` without overflow.
#[inline]
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// `Γ(x)` for positive arguments.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn softplus_is_finite_at_extremes() {
        assert_eq!(softplus(1000.0), 1000.0);
        assert!(softplus(-1000.0) >= 0.0 && softplus(-1000.0) < 1e-300);
        assert!((softplus(0.0) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn logistic_is_symmetric() {
        for x in [-800.0, -3.0, 0.0, 0.5, 40.0] {
            assert!((logistic(x) + logistic(-x) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn gamma_of_integers() {
        assert!((gamma(3.0) - 2.0).abs() < 1e-14);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
    }
}
