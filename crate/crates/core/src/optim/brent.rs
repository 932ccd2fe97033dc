//! One-dimensional minimization: golden-section search with successive
//! parabolic interpolation.

use crate::error::{Error, Result};

const GOLD: f64 = 0.381_966_011_250_105_2; // (3 - sqrt 5) / 2

/// Minimizes `f` on `[lo, hi]`; returns `(x*, f(x*))`.
///
/// For unimodal `f` the minimizer is located to within about `tol`.
pub fn brent_minimize<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "need lo < hi, got [{lo}, {hi}]"
        )));
    }
    let tol = tol.max(f64::EPSILON.sqrt() * (hi - lo).abs());
    let (mut a, mut b) = (lo, hi);
    let mut x = a + GOLD * (b - a);
    let mut w = x;
    let mut v = x;
    let mut fx = f(x);
    if !fx.is_finite() {
        return Err(Error::NonFinite("objective value".into()));
    }
    let (mut fw, mut fv) = (fx, fx);
    let mut d = 0.0f64;
    let mut e = 0.0f64;

    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let tol1 = tol * x.abs().max(1.0) * 1e-4 + 1e-12;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            // fit a parabola through (v, fv), (w, fw), (x, fx)
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_old = e;
            e = d;
            if p.abs() < (0.5 * q * e_old).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if m > x { tol1 } else { -tol1 };
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x < m { b - x } else { a - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + if d > 0.0 { tol1 } else { -tol1 }
        };
        let fu = f(u);
        if !fu.is_finite() {
            return Err(Error::NonFinite("objective value".into()));
        }
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok((x, fx))
}
