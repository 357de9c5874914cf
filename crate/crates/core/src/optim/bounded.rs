use super::{OptimResult, MAX_ITER_MULTI};
use crate::error::{Error, Result};

/// Stopping rules for [`minimize_bounded`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    /// Converged once the infinity norm of the projected gradient is at most
    /// this value.
    pub gtol: f64,
    /// Converged once an accepted step lowers the objective by at most
    /// `ftol · max(|f_old|, |f_new|)`.
    pub ftol: f64,
    pub max_iter: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            gtol: 1e-8,
            ftol: 1e-8,
            max_iter: MAX_ITER_MULTI,
        }
    }
}

const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 60;

/// Minimizes `f` over the box `lower ≤ x ≤ upper` (infinite bounds allowed).
///
/// Projected BFGS: variables sitting on a bound with the gradient pushing
/// outward are frozen, the inverse-Hessian approximation provides the step
/// on the free variables, and a backtracking Armijo search runs along the
/// projected path. Gradients are forward differences with step
/// `1e-7·max(1, |x_i|)`, switching to a backward difference when the forward
/// point would cross the upper bound.
///
/// Converges on a small projected gradient, or on a relative decrease below
/// `ftol` or a line search that can make no progress, provided in both cases
/// that no small coordinate step lowers the objective.
///
/// Every iterate lies inside the box and accepted objective values never
/// increase. Non-finite objective values are treated as `+∞` by the line
/// search.
pub fn minimize_bounded<F>(
    f: F,
    x0: &[f64],
    lower: &[f64],
    upper: &[f64],
    opts: &MinimizeOptions,
) -> Result<OptimResult>
where
    F: Fn(&[f64]) -> f64,
{
    let dim = x0.len();
    if dim == 0 || lower.len() != dim || upper.len() != dim {
        return Err(Error::InvalidBounds(format!(
            "dimension mismatch: start {dim}, lower {}, upper {}",
            lower.len(),
            upper.len()
        )));
    }
    for i in 0..dim {
        if lower[i].is_nan() || upper[i].is_nan() || lower[i] > upper[i] {
            return Err(Error::InvalidBounds(format!(
                "coordinate {i}: lower {} exceeds upper {}",
                lower[i], upper[i]
            )));
        }
        if !(x0[i].is_finite() && lower[i] <= x0[i] && x0[i] <= upper[i]) {
            return Err(Error::InvalidBounds(format!(
                "coordinate {i}: start {} outside [{}, {}]",
                x0[i], lower[i], upper[i]
            )));
        }
    }

    let mut x = x0.to_vec();
    let mut fx = f(&x);
    if !fx.is_finite() {
        return Ok(OptimResult {
            point: x,
            value: fx,
            converged: false,
            iterations: 0,
            grad_norm: f64::NAN,
        });
    }
    let mut g = fd_gradient(&f, &x, fx, upper);
    let mut h = identity(dim);
    let mut h_is_identity = true;
    let mut first_step = true;

    for iter in 0..opts.max_iter {
        let active = active_set(&x, &g, lower, upper);
        let pg = projected_gradient_norm(&g, &active);
        if pg <= opts.gtol {
            return Ok(finish(x, fx, true, iter, pg));
        }

        let mut step = search_direction(&h, &g, &active);
        if dot(&g, &step) >= 0.0 {
            h = identity(dim);
            h_is_identity = true;
            step = search_direction(&h, &g, &active);
        }
        if first_step {
            let big = step.iter().fold(0.0f64, |m, s| m.max(s.abs()));
            if big > 1.0 {
                step.iter_mut().for_each(|s| *s /= big);
            }
        }

        let mut accepted = line_search(&f, &x, fx, &g, &step, lower, upper);
        if accepted.is_none() && !h_is_identity {
            h = identity(dim);
            h_is_identity = true;
            step = search_direction(&h, &g, &active);
            accepted = line_search(&f, &x, fx, &g, &step, lower, upper);
        }
        let Some((x_new, f_new)) = accepted else {
            let minimal = probes_do_not_descend(&f, &x, fx, &active, lower, upper);
            return Ok(finish(x, fx, minimal, iter, pg));
        };

        let g_new = fd_gradient(&f, &x_new, f_new, upper);
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-10 * norm(&s) * norm(&y) {
            if first_step {
                let scale = sy / dot(&y, &y);
                h = identity(dim);
                h.iter_mut().for_each(|row| row.iter_mut().for_each(|v| *v *= scale));
            }
            bfgs_update(&mut h, &s, &y, sy);
            h_is_identity = false;
        }
        first_step = false;

        let decrease = fx - f_new;
        let scale = fx.abs().max(f_new.abs());
        x = x_new;
        fx = f_new;
        g = g_new;
        if decrease <= opts.ftol * scale {
            // A short step early on also makes little progress; only stop
            // where small coordinate steps confirm there is nothing left.
            let active = active_set(&x, &g, lower, upper);
            if probes_do_not_descend(&f, &x, fx, &active, lower, upper) {
                let pg = projected_gradient_norm(&g, &active);
                return Ok(finish(x, fx, true, iter + 1, pg));
            }
        }
    }
    let active = active_set(&x, &g, lower, upper);
    let pg = projected_gradient_norm(&g, &active);
    Ok(finish(x, fx, false, opts.max_iter, pg))
}

fn finish(point: Vec<f64>, value: f64, converged: bool, iterations: usize, pg: f64) -> OptimResult {
    OptimResult {
        point,
        value,
        converged,
        iterations,
        grad_norm: pg,
    }
}

fn fd_gradient<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], fx: f64, upper: &[f64]) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            let h = 1e-7 * x[i].abs().max(1.0);
            let forward = x[i] + h <= upper[i];
            probe[i] = if forward { x[i] + h } else { x[i] - h };
            let fh = f(&probe);
            probe[i] = x[i];
            let d = if forward { (fh - fx) / h } else { (fx - fh) / h };
            if d.is_finite() {
                d
            } else {
                0.0
            }
        })
        .collect()
}

/// Confirms a stall before it is reported as convergence. Near a minimizer
/// the finite-difference gradient can be rounding noise, and a step with
/// tiny decrease can also come from a poor quasi-Newton direction. The point
/// is accepted when no free coordinate step of relative size `PROBE` lowers
/// `f`, which places the minimizer along each coordinate within about that
/// distance.
fn probes_do_not_descend<F: Fn(&[f64]) -> f64>(
    f: &F,
    x: &[f64],
    fx: f64,
    active: &[bool],
    lower: &[f64],
    upper: &[f64],
) -> bool {
    const PROBE: f64 = 1e-5;
    let mut probe = x.to_vec();
    for i in (0..x.len()).filter(|&i| !active[i]) {
        let d = PROBE * x[i].abs().max(1.0);
        for t in [x[i] + d, x[i] - d] {
            if t < lower[i] || t > upper[i] {
                continue;
            }
            probe[i] = t;
            let ft = f(&probe);
            probe[i] = x[i];
            if ft < fx {
                return false;
            }
        }
    }
    true
}

fn active_set(x: &[f64], g: &[f64], lower: &[f64], upper: &[f64]) -> Vec<bool> {
    (0..x.len())
        .map(|i| (x[i] <= lower[i] && g[i] > 0.0) || (x[i] >= upper[i] && g[i] < 0.0))
        .collect()
}

fn projected_gradient_norm(g: &[f64], active: &[bool]) -> f64 {
    g.iter()
        .zip(active)
        .filter(|(_, a)| !**a)
        .fold(0.0f64, |m, (gi, _)| m.max(gi.abs()))
}

fn search_direction(h: &[Vec<f64>], g: &[f64], active: &[bool]) -> Vec<f64> {
    (0..g.len())
        .map(|i| {
            if active[i] {
                return 0.0;
            }
            -(0..g.len())
                .filter(|&j| !active[j])
                .map(|j| h[i][j] * g[j])
                .sum::<f64>()
        })
        .collect()
}

fn line_search<F: Fn(&[f64]) -> f64>(
    f: &F,
    x: &[f64],
    fx: f64,
    g: &[f64],
    step: &[f64],
    lower: &[f64],
    upper: &[f64],
) -> Option<(Vec<f64>, f64)> {
    let mut alpha = 1.0;
    for _ in 0..MAX_BACKTRACKS {
        let trial: Vec<f64> = (0..x.len())
            .map(|i| (x[i] + alpha * step[i]).clamp(lower[i], upper[i]))
            .collect();
        if trial == x {
            return None;
        }
        let ft = f(&trial);
        let predicted: f64 = (0..x.len()).map(|i| g[i] * (trial[i] - x[i])).sum();
        if ft.is_finite() && ft <= fx + ARMIJO * predicted && ft <= fx {
            return Some((trial, ft));
        }
        alpha *= 0.5;
    }
    None
}

fn bfgs_update(h: &mut [Vec<f64>], s: &[f64], y: &[f64], sy: f64) {
    let n = s.len();
    let rho = 1.0 / sy;
    let hy: Vec<f64> = (0..n).map(|i| (0..n).map(|j| h[i][j] * y[j]).sum()).collect();
    let yhy = dot(y, &hy);
    for i in 0..n {
        for j in 0..n {
            h[i][j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
