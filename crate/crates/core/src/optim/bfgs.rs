//! Quasi-Newton unconstrained minimization (BFGS, inverse-Hessian form) with
//! a strong-Wolfe line search.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct QnOptions {
    pub reltol: f64,
    pub gtol: f64,
    pub max_iter: usize,
}

impl Default for QnOptions {
    fn default() -> Self {
        QnOptions {
            reltol: 1e-12,
            gtol: 1e-8,
            max_iter: 500,
        }
    }
}

#[derive(Debug, Clone)]
pub struct QnResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
    pub grad_norm: f64,
}

/// Central-difference gradient with step `cbrt(eps) * max(1, |x_i|)`.
pub fn numeric_gradient<F: FnMut(&[f64]) -> f64>(f: &mut F, x: &[f64]) -> Vec<f64> {
    let h0 = f64::EPSILON.cbrt();
    let mut g = vec![0.0; x.len()];
    let mut xp = x.to_vec();
    for i in 0..x.len() {
        let h = h0 * x[i].abs().max(1.0);
        let orig = xp[i];
        xp[i] = orig + h;
        let fp = f(&xp);
        xp[i] = orig - h;
        let fm = f(&xp);
        xp[i] = orig;
        g[i] = (fp - fm) / (2.0 * h);
    }
    g
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Bundles the objective with its (analytic or numeric) gradient.
struct Oracle<'a, F: FnMut(&[f64]) -> f64> {
    f: F,
    grad: Option<&'a dyn Fn(&[f64]) -> Vec<f64>>,
}

impl<'a, F: FnMut(&[f64]) -> f64> Oracle<'a, F> {
    fn value(&mut self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    fn gradient(&mut self, x: &[f64]) -> Vec<f64> {
        match self.grad {
            Some(g) => g(x),
            None => numeric_gradient(&mut self.f, x),
        }
    }
}

/// Strong-Wolfe line search (bracketing plus bisection zoom).
fn line_search<F: FnMut(&[f64]) -> f64>(
    oracle: &mut Oracle<F>,
    x: &[f64],
    p: &[f64],
    f0: f64,
    g0: f64,
) -> Option<(f64, f64)> {
    const C1: f64 = 1e-4;
    const C2: f64 = 0.9;
    fn at(x: &[f64], p: &[f64], alpha: f64) -> Vec<f64> {
        x.iter().zip(p).map(|(xi, pi)| xi + alpha * pi).collect()
    }

    let zoom =
        |mut lo: f64, mut hi: f64, mut flo: f64, oracle: &mut Oracle<F>| -> Option<(f64, f64)> {
            for _ in 0..50 {
                let mid = 0.5 * (lo + hi);
                let xm = at(x, p, mid);
                let fm = oracle.value(&xm);
                if !fm.is_finite() || fm > f0 + C1 * mid * g0 || fm >= flo {
                    hi = mid;
                } else {
                    let gm = dot(&oracle.gradient(&xm), p);
                    if gm.abs() <= -C2 * g0 {
                        return Some((mid, fm));
                    }
                    if gm * (hi - lo) >= 0.0 {
                        hi = lo;
                    }
                    lo = mid;
                    flo = fm;
                }
                if (hi - lo).abs() < 1e-14 {
                    return if flo <= f0 { Some((lo, flo)) } else { None };
                }
            }
            if flo <= f0 {
                Some((lo, flo))
            } else {
                None
            }
        };

    let mut alpha_prev = 0.0f64;
    let mut f_prev = f0;
    let mut alpha = 1.0f64;
    for _ in 0..30 {
        let xa = at(x, p, alpha);
        let fa = oracle.value(&xa);
        if !fa.is_finite() || fa > f0 + C1 * alpha * g0 || (fa >= f_prev && alpha_prev > 0.0) {
            return zoom(alpha_prev, alpha, f_prev, oracle);
        }
        let ga = dot(&oracle.gradient(&xa), p);
        if ga.abs() <= -C2 * g0 {
            return Some((alpha, fa));
        }
        if ga >= 0.0 {
            return zoom(alpha, alpha_prev, fa, oracle);
        }
        alpha_prev = alpha;
        f_prev = fa;
        alpha *= 2.0;
    }
    None
}

/// Minimizes `f` from `x0`. If `analytic_grad` is given it is first checked
/// against finite differences at `x0` and an error is raised on mismatch.
pub fn qn_minimize<F>(
    f: F,
    analytic_grad: Option<&dyn Fn(&[f64]) -> Vec<f64>>,
    x0: &[f64],
    opts: QnOptions,
) -> Result<QnResult>
where
    F: FnMut(&[f64]) -> f64,
{
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("starting point".into()));
    }
    let mut oracle = Oracle {
        f,
        grad: analytic_grad,
    };
    if analytic_grad.is_some() {
        let ga = oracle.gradient(x0);
        let gn = numeric_gradient(&mut oracle.f, x0);
        for (a, b) in ga.iter().zip(&gn) {
            let scale = a.abs().max(b.abs()).max(1.0);
            if (a - b).abs() > 1e-4 * scale {
                return Err(Error::InvalidParameter(format!(
                    "analytic gradient disagrees with finite differences: {a} vs {b}"
                )));
            }
        }
    }

    let n = x0.len();
    let mut x = x0.to_vec();
    let mut fx = oracle.value(&x);
    if !fx.is_finite() {
        return Err(Error::NonFinite("objective at start".into()));
    }
    let mut g = oracle.gradient(&x);

    let identity = |n: usize| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    };
    let mut h = identity(n); // inverse Hessian approximation

    let mut iterations = 0usize;
    let mut converged = false;
    while iterations < opts.max_iter {
        iterations += 1;
        if norm_inf(&g) <= opts.gtol {
            converged = true;
            break;
        }
        let mut p: Vec<f64> = h.iter().map(|row| -dot(row, &g)).collect();
        let mut g0 = dot(&g, &p);
        if g0 >= 0.0 {
            // not a descent direction; restart from steepest descent
            h = identity(n);
            p = g.iter().map(|v| -v).collect();
            g0 = -dot(&g, &g);
        }
        let Some((alpha, f_new)) = line_search(&mut oracle, &x, &p, fx, g0) else {
            break; // flagged as non-converged below
        };
        let s: Vec<f64> = p.iter().map(|pi| alpha * pi).collect();
        let x_new: Vec<f64> = x.iter().zip(&s).map(|(xi, si)| xi + si).collect();
        let g_new = oracle.gradient(&x_new);
        let yv: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &yv);
        if sy > 1e-12 * norm_inf(&s) * norm_inf(&yv).max(1e-300) {
            // BFGS update: H <- (I - rho s y') H (I - rho y s') + rho s s'
            let rho = 1.0 / sy;
            let hy: Vec<f64> = h.iter().map(|row| dot(row, &yv)).collect();
            let yhy = dot(&yv, &hy);
            for i in 0..n {
                for j in 0..n {
                    h[i][j] += -rho * (s[i] * hy[j] + hy[i] * s[j])
                        + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }
        // relative-improvement stop, as in classical quasi-Newton codes
        let rel_change = (fx - f_new).abs() / (fx.abs() + opts.reltol);
        x = x_new;
        fx = f_new;
        g = g_new;
        if rel_change <= opts.reltol {
            converged = true;
            break;
        }
    }
    if norm_inf(&g) <= opts.gtol {
        converged = true;
    }
    Ok(QnResult {
        value: fx,
        converged,
        iterations,
        grad_norm: norm_inf(&g),
        x,
    })
}
