//! Brute-force oracles shared by the integration tests. They re-derive each
//! quantity from its definition and share no code path with the library.

#![allow(dead_code)]

/// Argmin of `f` over an evenly spaced grid of `points` on `[lo, hi]`, and
/// the grid spacing.
pub fn grid_argmin_1d<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    let step = (hi - lo) / (points - 1) as f64;
    let mut best = (lo, f(lo));
    for i in 1..points {
        let t = lo + step * i as f64;
        let v = f(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    (best.0, step)
}

/// Nested 1-D grid: a first pass of `first` points over `[lo, hi]`, then
/// passes of 41 points zooming into the two cells around the best node, until
/// the spacing drops below `tol`.
pub fn nested_grid_1d<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, first: usize, tol: f64) -> f64 {
    let (bound_lo, bound_hi) = (lo, hi);
    let (mut lo, mut hi, mut points) = (lo, hi, first);
    loop {
        let (best, step) = grid_argmin_1d(&f, lo, hi, points);
        if step < tol {
            return best;
        }
        lo = (best - 2.0 * step).max(bound_lo);
        hi = (best + 2.0 * step).min(bound_hi);
        points = 41;
    }
}

/// Argmin of `f(x, y)` on a box by profiling: a nested grid over `x` of
/// `min_y f(x, y)`, the inner minimum itself a nested grid over `y`. Unlike a
/// 2-D zoom this follows long, narrow valleys.
pub fn profile_grid_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    lo: [f64; 2],
    hi: [f64; 2],
    first: usize,
    tol: f64,
) -> [f64; 2] {
    let inner = |x: f64| nested_grid_1d(|y| f(x, y), lo[1], hi[1], first, tol);
    let x = nested_grid_1d(|x| f(x, inner(x)), lo[0], hi[0], first, tol);
    [x, inner(x)]
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Option<f64> {
    let mut flo = f(lo);
    if flo.signum() == f(hi).signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Burr log-likelihood profiled over `k`, differentiated in `c`.
pub fn burr_profile_score(xs: &[f64], c: f64) -> f64 {
    let n = xs.len() as f64;
    let mut sum_ln = 0.0;
    let mut sum_sp = 0.0;
    let mut weighted = 0.0;
    for &x in xs {
        let l = x.ln();
        sum_ln += l;
        sum_sp += softplus(c * l);
        // d/dc log(1 + x^c) = ln x · x^c / (1 + x^c)
        weighted += l * logistic(c * l);
    }
    let k = n / sum_sp;
    n / c + sum_ln - (k + 1.0) * weighted
}

/// Cramér–von Mises criterion `(1/n) Σ S_j ((2j − 1)/n − 2 + S_j)` from
/// survival values at the sorted sample.
pub fn cvm_criterion(survival: impl Fn(f64) -> f64, sorted: &[f64]) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let s = survival(x);
            s * ((2.0 * (j + 1) as f64 - 1.0) / n - 2.0 + s)
        })
        .sum::<f64>()
        / n
}

/// Minimizer of the noise-contrastive criterion by damped Newton with the
/// analytic gradient and Hessian (the criterion is convex in `(ϑ₁, ϑ₃, c)`).
/// When the unconstrained solution has `ϑ₃ > upper`, `ϑ₃` is pinned there.
pub fn nce_newton(x: &[f64], y: &[f64], lambda: f64, upper: f64) -> [f64; 3] {
    let free = newton_nce(x, y, lambda, None);
    if free[1] <= upper {
        free
    } else {
        newton_nce(x, y, lambda, Some(upper))
    }
}

fn nce_value(t: &[f64; 3], x: &[f64], y: &[f64], lambda: f64) -> f64 {
    let n = x.len() as f64;
    let base = (y.len() as f64 / n * lambda).ln();
    let ell = |z: f64| base - (lambda + t[0]) * z - t[1] * z * z * z - t[2];
    (x.iter().map(|&z| softplus(ell(z))).sum::<f64>()
        + y.iter().map(|&z| softplus(-ell(z))).sum::<f64>())
        / n
}

fn newton_nce(x: &[f64], y: &[f64], lambda: f64, pinned: Option<f64>) -> [f64; 3] {
    let n = x.len() as f64;
    let base = (y.len() as f64 / n * lambda).ln();
    let mut t = [0.0, pinned.unwrap_or(-0.1), 0.0];
    let active: Vec<usize> = if pinned.is_some() { vec![0, 2] } else { vec![0, 1, 2] };
    for _ in 0..500 {
        let ell = |z: f64| base - (lambda + t[0]) * z - t[1] * z * z * z - t[2];
        let mut g = [0.0; 3];
        let mut h = [[0.0; 3]; 3];
        let mut add = |z: f64, p: f64, sign: f64| {
            // ∂ℓ/∂(ϑ₁, ϑ₃, c)
            let phi = [-z, -z * z * z, -1.0];
            for a in 0..3 {
                g[a] += sign * p * phi[a] / n;
                for b in 0..3 {
                    h[a][b] += p * (1.0 - p) * phi[a] * phi[b] / n;
                }
            }
        };
        for &z in x {
            add(z, logistic(ell(z)), 1.0);
        }
        for &z in y {
            // d softplus(−ℓ)/dℓ = −σ(−ℓ) = −(1 − σ(ℓ)); same curvature.
            let p = logistic(ell(z));
            let q = 1.0 - p;
            let phi = [-z, -z * z * z, -1.0];
            for a in 0..3 {
                g[a] -= q * phi[a] / n;
                for b in 0..3 {
                    h[a][b] += p * q * phi[a] * phi[b] / n;
                }
            }
        }
        let k = active.len();
        let mut m = vec![vec![0.0; k + 1]; k];
        for (r, &a) in active.iter().enumerate() {
            for (c, &b) in active.iter().enumerate() {
                m[r][c] = h[a][b];
            }
            m[r][k] = -g[a];
        }
        let step = solve(m);
        let gnorm: f64 = active.iter().map(|&a| g[a] * g[a]).sum::<f64>().sqrt();
        if gnorm < 1e-13 {
            break;
        }
        let f0 = nce_value(&t, x, y, lambda);
        let mut s = 1.0;
        loop {
            let mut cand = t;
            for (r, &a) in active.iter().enumerate() {
                cand[a] += s * step[r];
            }
            if nce_value(&cand, x, y, lambda) <= f0 || s < 1e-12 {
                t = cand;
                break;
            }
            s *= 0.5;
        }
    }
    t
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
#[allow(clippy::needless_range_loop)]
fn solve(mut m: Vec<Vec<f64>>) -> Vec<f64> {
    let k = m.len();
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, piv);
        for r in col + 1..k {
            let f = m[r][col] / m[col][col];
            for c in col..=k {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    let mut out = vec![0.0; k];
    for r in (0..k).rev() {
        let s: f64 = (r + 1..k).map(|c| m[r][c] * out[c]).sum();
        out[r] = (m[r][k] - s) / m[r][r];
    }
    out
}

/// Median of a slice (sorted copy).
pub fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let m = s.len() / 2;
    if s.len().is_multiple_of(2) {
        0.5 * (s[m - 1] + s[m])
    } else {
        s[m]
    }
}

/// Least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
