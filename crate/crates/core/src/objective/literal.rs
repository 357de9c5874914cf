//! The closed forms written as literal double loops over ordered pairs. Used
//! only to cross-check the prefix-sum evaluation.

#![allow(clippy::needless_range_loop)]

fn terms(x: &[f64], a: f64) -> (f64, Vec<f64>) {
    (x.len() as f64, x.iter().map(|&v| (-a * v).exp()).collect())
}

pub fn exponential(x: &[f64], a: f64) -> [f64; 3] {
    let (n, e) = terms(x, a);
    let mut pair = 0.0;
    for j in 0..x.len() {
        for k in j + 1..x.len() {
            pair += x[j] * e[k];
        }
    }
    let (mut s1, mut s2, mut s3) = (0.0, 0.0, 0.0);
    for j in 0..x.len() {
        let r = (j + 1) as f64;
        s1 += e[j] * (x[j] * (-n + r - 1.0) - (2.0 * n - 2.0 * r + 1.0) / a);
        s2 += e[j] * (x[j] * (-n + r - 1.0) - (n - 2.0 * r + 1.0) / a);
        s3 += e[j] * (2.0 * r - 1.0);
    }
    let nn = n * n;
    [
        2.0 / a.powi(3) + 2.0 / (a * a * nn) * s1 - 2.0 / (a * a * nn) * pair,
        2.0 / (a * nn) * s2 - 2.0 / (a * nn) * pair,
        s3 / (a * nn),
    ]
}

pub fn rayleigh(x: &[f64], a: f64) -> [f64; 3] {
    let (n, e) = terms(x, a);
    let nn = n * n;
    let (a2, a3) = (a * a, a * a * a);
    let mut p = [0.0; 3];
    for j in 0..x.len() {
        let xj = x[j];
        for k in j + 1..x.len() {
            let xk = x[k];
            p[0] += 2.0 / nn
                * (xj * xk * 2.0 / a3 * (1.0 - e[j]) - xj * xj * xk / a2 * (e[j] + e[k]));
            p[1] += 2.0 / nn
                * (xj * xj * e[k] / a * (1.0 / (a * xk) - 1.0)
                    + xj * e[j] / a * (xj / (a * xk) - xk)
                    - 2.0 / a3 * (1.0 - e[j]) * (xk / xj + xj / xk));
            p[2] += 2.0 / nn
                * (xj / (a * xk) * e[j] + 2.0 / (a3 * xj * xk) * (1.0 - e[j]));
        }
        let r = (j + 1) as f64;
        p[0] += (2.0 * xj * xj / a3 * (1.0 - e[j]) - 2.0 * xj.powi(3) / a2 * e[j]) / nn;
        p[1] += (2.0 * e[j] / a * xj * (2.0 * r / a - xj) - 4.0 / a3 * (1.0 - e[j])) / nn;
        p[2] += (2.0 / (a3 * xj * xj) * (1.0 - e[j])
            + e[j] / a * (4.0 * r - 1.0 - 2.0 / (a * xj) * (2.0 * r - 1.0)))
            / nn;
    }
    p
}

pub fn burr(x: &[f64], c: f64, k: f64, a: f64) -> f64 {
    let (n, e) = terms(x, a);
    let nn = n * n;
    let (a2, a3) = (a * a, a * a * a);
    let big_a: Vec<f64> = x
        .iter()
        .map(|&v| c * (k + 1.0) * v.powf(c - 1.0) / (1.0 + v.powf(c)) - (c - 1.0) / v)
        .collect();
    let big_b: Vec<f64> = x
        .iter()
        .map(|&v| -c * (k + 1.0) * v.powf(c) / (1.0 + v.powf(c)))
        .collect();
    let mut s = 0.0;
    for j in 0..x.len() {
        for l in j + 1..x.len() {
            s += 2.0 / nn
                * (big_a[l]
                    * (2.0 * big_a[j] / a3 * (1.0 - e[j])
                        + big_b[j] / a2 * (e[j] + e[l])
                        + (c - 2.0) / a2 * e[j]
                        - x[j] / a * e[j])
                    + big_b[j] / a * e[l]);
        }
    }
    for j in 0..x.len() {
        let r = (j + 1) as f64;
        s += (big_a[j] * big_a[j] * (-2.0 * x[j] / a2 * e[j] - 2.0 / a3 * e[j] + 2.0 / a3)
            + 2.0 * (r - 1.0) * c / a2 * big_a[j] * e[j]
            + 2.0 * big_b[j] / a * e[j])
            / nn;
        s += 2.0 * c / (a * nn) * r * e[j] - e[j] / (a * nn);
    }
    s
}

pub fn exppoly(x: &[f64], a: f64) -> [f64; 5] {
    let (n, e) = terms(x, a);
    let nn = n * n;
    let (a2, a3) = (a * a, a * a * a);
    let mut p = [0.0; 5];
    p[0] = 2.0 / a3;
    for j in 0..x.len() {
        let (xj, ej, r) = (x[j], e[j], (j + 1) as f64);
        p[0] += ej * (-2.0 * xj / a2 - 2.0 / a3 * (2.0 * n - 2.0 * r + 1.0)) / nn;
        p[1] += (-18.0 * xj.powi(5) / a2 * ej + 18.0 * xj.powi(4) / a3 * (1.0 - ej)) / nn;
        p[2] += (-12.0 * xj.powi(3) / a2 * ej + 12.0 * xj * xj / a3 * (1.0 - ej)) / nn;
        p[3] += ej * (2.0 * xj / a + 2.0 * (n - 2.0 * r + 1.0) / a2) / nn;
        p[4] += 6.0 * xj.powi(3) / a * ej / nn;
        for k in j + 1..x.len() {
            let (xk, ek) = (x[k], e[k]);
            p[0] += 2.0 / nn * (-xj / a2 * (ek + ej));
            p[1] += 2.0 / nn
                * (-9.0 * xj.powi(3) * xk * xk / a2 * (ek + ej)
                    + 18.0 * xj * xj * xk * xk / a3 * (1.0 - ej));
            p[2] += 2.0 / nn
                * ((ek + ej) * (-3.0 * xj * xk * xk / a2 - 3.0 * xj.powi(3) / a2)
                    + 6.0 / a3 * (1.0 - ej) * (xj * xj + xk * xk));
            p[3] += 2.0 / nn * (xj / a * (ek + ej));
            p[4] += 2.0 / nn
                * (3.0 * xj.powi(3) / a * ek
                    + 3.0 * xj * xk * xk / a * ej
                    + 3.0 * xk * xk / a2 * (ej - ek));
        }
    }
    p
}

mod tests {
    use super::super::*;
    use crate::models::sample as draw;
    use crate::rng::seeded;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    fn quad2(p: &ParamVector, s: &Sample, a: f64) -> f64 {
        let cfg = LqWeightConfig::new(2.0, a).unwrap();
        psi_quadrature(p, s, &cfg).unwrap().value.powi(2)
    }

    #[test]
    fn exponential_prefix_sums_match_double_loop_and_quadrature() {
        for (seed, n, a) in [(1, 1, 0.5), (2, 8, 0.25), (3, 40, 3.0), (4, 200, 1.0)] {
            let truth = ParamVector::exponential(2.0).unwrap();
            let s = draw(&truth, n, &mut seeded(seed)).unwrap();
            let c = ExponentialCoefficients::new(&s, a).unwrap();
            let lit = super::exponential(s.sorted(), a);
            assert!(close(c.psi1, lit[0], 1e-11));
            assert!(close(c.psi2, lit[1], 1e-11));
            assert!(close(c.psi3, lit[2], 1e-11));
            for theta in [0.3, 2.0, 7.5] {
                let p = ParamVector::exponential(theta).unwrap();
                let closed = psi2_closed_exponential(theta, &s, a).unwrap().0;
                assert!(close(closed, quad2(&p, &s, a), 1e-8), "n={n} a={a} θ={theta}");
            }
        }
    }

    #[test]
    fn rayleigh_prefix_sums_match_double_loop_and_quadrature() {
        for (seed, n, a) in [(5, 1, 1.0), (6, 8, 1.0), (7, 50, 0.25), (8, 120, 3.0)] {
            let truth = ParamVector::rayleigh(1.5).unwrap();
            let s = draw(&truth, n, &mut seeded(seed)).unwrap();
            let c = RayleighCoefficients::new(&s, a).unwrap();
            let lit = super::rayleigh(s.sorted(), a);
            assert!(close(c.psi1, lit[0], 1e-10), "{} {}", c.psi1, lit[0]);
            assert!(close(c.psi2, lit[1], 1e-10), "{} {}", c.psi2, lit[1]);
            assert!(close(c.psi3, lit[2], 1e-10), "{} {}", c.psi3, lit[2]);
            for theta in [0.7, 1.5, 4.0] {
                let p = ParamVector::rayleigh(theta).unwrap();
                let closed = psi2_closed_rayleigh(theta, &s, a).unwrap().0;
                assert!(close(closed, quad2(&p, &s, a), 1e-8), "n={n} a={a} θ={theta}");
            }
        }
    }

    #[test]
    fn burr_prefix_sums_match_double_loop_and_quadrature() {
        for (seed, n, a) in [(9, 1, 1.0), (10, 6, 1.0), (11, 60, 0.25), (12, 100, 3.0)] {
            let truth = ParamVector::burr(2.0, 5.0).unwrap();
            let s = draw(&truth, n, &mut seeded(seed)).unwrap();
            for (c, k) in [(2.0, 5.0), (0.8, 2.0), (5.0, 0.8), (1.0, 1.0)] {
                let p = ParamVector::burr(c, k).unwrap();
                let closed = psi2_closed_burr(c, k, &s, a).unwrap();
                let lit = super::burr(s.sorted(), c, k, a);
                assert!(close(closed, lit, 1e-10), "{closed} {lit}");
                assert!(close(closed, quad2(&p, &s, a), 1e-8), "n={n} a={a} c={c} k={k}");
            }
        }
    }

    #[test]
    fn exppoly_prefix_sums_match_double_loop_and_quadrature() {
        for (seed, n, a) in [(13, 1, 1.0), (14, 6, 1.0), (15, 50, 0.5), (16, 100, 5.0)] {
            let truth = ParamVector::exp_poly(0.0, -0.5).unwrap();
            let s = draw(&truth, n, &mut seeded(seed)).unwrap();
            let c = ExpPolyCoefficients::new(&s, a).unwrap();
            let lit = super::exppoly(s.sorted(), a);
            for i in 0..5 {
                assert!(close(c.psi[i], lit[i], 1e-10), "Ψ̄{} {} {}", i + 1, c.psi[i], lit[i]);
            }
            for (t1, t3) in [(0.0, -0.5), (1.0, -0.05), (-0.5, -3.0), (0.3, -0.01)] {
                let p = ParamVector::exp_poly(t1, t3).unwrap();
                let closed = psi2_closed_exppoly(t1, t3, &s, a).unwrap().0;
                assert!(close(closed, quad2(&p, &s, a), 1e-8), "n={n} a={a} ϑ=({t1},{t3})");
            }
            let at_zero = psi2_closed_exppoly(0.0, 0.0, &s, a).unwrap().0;
            assert_eq!(at_zero, c.constant);
            assert_eq!(c.gradient(0.0, 0.0), [c.psi[3], c.psi[4]]);
        }
    }

    #[test]
    fn closed_forms_validate_inputs() {
        let s = Sample::new(vec![0.5, 1.0]).unwrap();
        assert!(psi2_closed_exponential(1.0, &s, -1.0).is_err());
        assert!(psi2_closed_rayleigh(1.0, &s, 0.0).is_err());
        assert!(psi2_closed_burr(-1.0, 1.0, &s, 1.0).is_err());
        assert!(psi2_closed_exppoly(0.0, -1.0, &s, f64::NAN).is_err());
    }
}
