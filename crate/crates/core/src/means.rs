//! Univariate fusion functions: means, order statistics, quantiles, and
//! weighting triangles.

use crate::error::{Error, Result};
use crate::order::ordering_permutation;
use crate::types::{Generator, RealVector, WeightVector};

/// Compensated summation (the Kahan scheme with Neumaier's correction,
/// which also survives cancellation of a large intermediate sum).
pub fn kahan_sum(x: &RealVector) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for &v in x.values() {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Selects one of the named univariate fusion functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanSpec {
    AMean,
    QMean,
    HMean,
    GMean,
    /// Power mean with exponent `r != 0`.
    PMean(f64),
    /// Exponential mean with parameter `gamma != 0`.
    EMean(f64),
    Median,
    Min,
    Max,
    Sum,
    Prod,
    LukasiewiczTnorm,
    LukasiewiczTconorm,
    DrasticTconorm,
    Mode,
    ThreePi,
    /// k-th order statistic, 1-based.
    Os(usize),
}

impl MeanSpec {
    fn validate(&self, n: usize) -> Result<()> {
        match *self {
            MeanSpec::PMean(r) if r == 0.0 => {
                Err(Error::InvalidParameter("pmean needs r != 0".into()))
            }
            MeanSpec::EMean(g) if g == 0.0 => {
                Err(Error::InvalidParameter("emean needs gamma != 0".into()))
            }
            MeanSpec::Os(k) if k < 1 || k > n => Err(Error::InvalidParameter(format!(
                "os needs 1 <= k <= {n}, got {k}"
            ))),
            _ => Ok(()),
        }
    }

    /// Idempotent per the one-dimensional function catalog.
    pub fn is_idempotent(&self) -> bool {
        !matches!(
            self,
            MeanSpec::Sum
                | MeanSpec::Prod
                | MeanSpec::LukasiewiczTnorm
                | MeanSpec::LukasiewiczTconorm
                | MeanSpec::DrasticTconorm
                | MeanSpec::ThreePi
        )
    }

    pub fn is_symmetric(&self) -> bool {
        true // every shipped kind is a symmetric function of its inputs
    }
}

fn median_sorted(s: &[f64]) -> f64 {
    let n = s.len();
    // (x_(floor((n+1)/2)) + x_(ceil((n+1)/2))) / 2, 1-based
    let lo = n.div_ceil(2) - 1;
    let hi = (n + 2) / 2 - 1;
    0.5 * (s[lo] + s[hi])
}

/// Evaluates a [`MeanSpec`] on a vector.
///
/// ```
/// use fusekit::means::{aggregate, MeanSpec};
/// use fusekit::RealVector;
///
/// let x = RealVector::new(vec![1.0, 7.0, 2.0, 4.0]).unwrap();
/// assert_eq!(aggregate(MeanSpec::Median, &x).unwrap(), 3.0);
/// assert_eq!(aggregate(MeanSpec::Os(3), &x).unwrap(), 4.0);
/// ```
pub fn aggregate(spec: MeanSpec, x: &RealVector) -> Result<f64> {
    let v = x.values();
    let n = v.len();
    spec.validate(n)?;
    match spec {
        MeanSpec::AMean => Ok(kahan_sum(x) / n as f64),
        MeanSpec::QMean => {
            let s: f64 = v.iter().map(|a| a * a).sum();
            Ok((s / n as f64).sqrt())
        }
        MeanSpec::HMean => {
            if v.iter().any(|&a| a <= 0.0) {
                return Err(Error::Domain("hmean needs x > 0".into()));
            }
            let s: f64 = v.iter().map(|a| 1.0 / a).sum();
            Ok(n as f64 / s)
        }
        MeanSpec::GMean => {
            if v.iter().any(|&a| a <= 0.0) {
                return Err(Error::Domain("gmean needs x > 0".into()));
            }
            let s: f64 = v.iter().map(|a| a.ln()).sum();
            Ok((s / n as f64).exp())
        }
        MeanSpec::PMean(r) => {
            if v.iter().any(|&a| a < 0.0) || (r < 0.0 && v.contains(&0.0)) {
                return Err(Error::Domain("pmean needs x >= 0 (x > 0 for r < 0)".into()));
            }
            let s: f64 = v.iter().map(|a| a.powf(r)).sum();
            Ok((s / n as f64).powf(1.0 / r))
        }
        MeanSpec::EMean(g) => {
            // log-sum-exp with max shift
            let m = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let s: f64 = v.iter().map(|a| (g * (a - m)).exp()).sum();
            Ok(m + (s / n as f64).ln() / g)
        }
        MeanSpec::Median => Ok(median_sorted(&x.sorted())),
        MeanSpec::Min => Ok(v.iter().cloned().fold(f64::INFINITY, f64::min)),
        MeanSpec::Max => Ok(v.iter().cloned().fold(f64::NEG_INFINITY, f64::max)),
        MeanSpec::Sum => Ok(kahan_sum(x)),
        MeanSpec::Prod => Ok(v.iter().product()),
        MeanSpec::LukasiewiczTnorm => {
            check_unit_interval(v)?;
            Ok((kahan_sum(x) - n as f64 + 1.0).max(0.0))
        }
        MeanSpec::LukasiewiczTconorm => {
            check_unit_interval(v)?;
            Ok(kahan_sum(x).min(1.0))
        }
        MeanSpec::DrasticTconorm => {
            check_unit_interval(v)?;
            let s = x.sorted();
            // largest element if the second largest is 0, else 1
            if n == 1 {
                Ok(s[0])
            } else if s[n - 2] == 0.0 {
                Ok(s[n - 1])
            } else {
                Ok(1.0)
            }
        }
        MeanSpec::Mode => {
            let s = x.sorted();
            let mut best = s[0];
            let mut best_count = 0usize;
            let mut i = 0;
            while i < n {
                let mut j = i + 1;
                while j < n && s[j] == s[i] {
                    j += 1;
                }
                // ties break to the smallest value: strict improvement only
                if j - i > best_count {
                    best_count = j - i;
                    best = s[i];
                }
                i = j;
            }
            Ok(best)
        }
        MeanSpec::ThreePi => {
            check_unit_interval(v)?;
            let p: f64 = v.iter().product();
            let q: f64 = v.iter().map(|a| 1.0 - a).product();
            if p + q == 0.0 {
                Ok(0.0) // 0/0 = 0 convention
            } else {
                Ok(p / (p + q))
            }
        }
        MeanSpec::Os(k) => Ok(x.sorted()[k - 1]),
    }
}

fn check_unit_interval(v: &[f64]) -> Result<()> {
    if v.iter().any(|&a| !(0.0..=1.0).contains(&a)) {
        return Err(Error::Domain("inputs must lie in [0, 1]".into()));
    }
    Ok(())
}

/// Weighted quasi-arithmetic mean `phi^{-1}(sum w_i phi(x_i))`.
pub fn wqa_mean(phi: Generator, w: &WeightVector, x: &RealVector) -> Result<f64> {
    if w.len() != x.len() {
        return Err(Error::LengthMismatch(w.len(), x.len()));
    }
    let mut acc = 0.0;
    for (&wi, &xi) in w.weights().iter().zip(x.values()) {
        acc += wi * phi.phi(xi)?;
    }
    phi.phi_inv(acc)
}

/// Ordered weighted average: weights attach to ascending order statistics.
pub fn owa(w: &WeightVector, x: &RealVector) -> Result<f64> {
    if w.len() != x.len() {
        return Err(Error::LengthMismatch(w.len(), x.len()));
    }
    let s = x.sorted();
    Ok(w.weights().iter().zip(&s).map(|(wi, xi)| wi * xi).sum())
}

fn check_trim(k: usize, n: usize) -> Result<()> {
    // 0 <= k <= floor(n/2) - 1
    if n / 2 == 0 || k > n / 2 - 1 {
        return Err(Error::InvalidParameter(format!(
            "k = {k} out of range for n = {n}"
        )));
    }
    Ok(())
}

pub fn trimmed_mean(k: usize, x: &RealVector) -> Result<f64> {
    let n = x.len();
    check_trim(k, n)?;
    let s = x.sorted();
    let sum: f64 = s[k..n - k].iter().sum();
    Ok(sum / (n - 2 * k) as f64)
}

pub fn winsorized_mean(k: usize, x: &RealVector) -> Result<f64> {
    let n = x.len();
    check_trim(k, n)?;
    let s = x.sorted();
    let mut sum: f64 = s[k..n - k].iter().sum();
    sum += k as f64 * s[k];
    sum += k as f64 * s[n - 1 - k];
    Ok(sum / n as f64)
}

/// Sample quantile, one of the nine classical parameterizations.
///
/// Computes `gamma * x_(k) + (1 - gamma) * x_(k+1)` for the type-specific
/// `(k, gamma)`; out-of-range indices clamp to the extremes.
pub fn quantile(qtype: u8, alpha: f64, x: &RealVector) -> Result<f64> {
    if !(1..=9).contains(&qtype) {
        return Err(Error::InvalidParameter(format!(
            "qtype {qtype} not in 1..9"
        )));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha {alpha} not in [0, 1]"
        )));
    }
    let s = x.sorted();
    let n = s.len();
    let nf = n as f64;
    let (k, gamma) = match qtype {
        1 => {
            let k = (nf * alpha).floor();
            (k, if k == nf * alpha { 1.0 } else { 0.0 })
        }
        2 => {
            let k = (nf * alpha).floor();
            (k, if k == nf * alpha { 0.5 } else { 0.0 })
        }
        3 => {
            let k = (nf * alpha - 0.5).floor();
            let even = (k as i64) % 2 == 0;
            (
                k,
                if k == nf * alpha - 0.5 && even {
                    1.0
                } else {
                    0.0
                },
            )
        }
        // continuous types: h = n*alpha + m, k = floor(h), gamma = k + 1 - h
        t => {
            let m = match t {
                4 => 0.0,
                5 => 0.5,
                6 => alpha,
                7 => 1.0 - alpha,
                8 => (alpha + 1.0) / 3.0,
                _ => alpha / 4.0 + 3.0 / 8.0,
            };
            let h = nf * alpha + m;
            let k = h.floor();
            (k, k + 1.0 - h)
        }
    };
    let at = |i: f64| -> f64 {
        // clamp 1-based index into the sample
        let i = i.max(1.0).min(nf) as usize;
        s[i - 1]
    };
    Ok(gamma * at(k) + (1.0 - gamma) * at(k + 1.0))
}

/// Gini mean with exponents `p`, `q`; `p == q` uses the limit form.
pub fn gini_mean(p: f64, q: f64, w: &WeightVector, x: &RealVector) -> Result<f64> {
    if w.len() != x.len() {
        return Err(Error::LengthMismatch(w.len(), x.len()));
    }
    if x.values().iter().any(|&a| a <= 0.0) {
        return Err(Error::Domain("gini mean needs x > 0".into()));
    }
    let ws = w.weights();
    let v = x.values();
    if p != q {
        let num: f64 = ws.iter().zip(v).map(|(wi, xi)| wi * xi.powf(p)).sum();
        let den: f64 = ws.iter().zip(v).map(|(wi, xi)| wi * xi.powf(q)).sum();
        Ok((num / den).powf(1.0 / (p - q)))
    } else {
        let den: f64 = ws.iter().zip(v).map(|(wi, xi)| wi * xi.powf(p)).sum();
        let num: f64 = ws
            .iter()
            .zip(v)
            .map(|(wi, xi)| wi * xi.powf(p) * xi.ln())
            .sum();
        Ok((num / den).exp())
    }
}

/// How to produce row `n` of a weighting triangle.
#[derive(Debug, Clone)]
pub enum TriangleScheme {
    /// `w_{i,n} = c_i / sum_{j<=n} c_j` for a nonnegative sequence `c`.
    CoefSequence(Vec<f64>),
    /// `w_{i,n} = w(i/n) - w((i-1)/n)` for nondecreasing `w`, `w(0)=0`, `w(1)=1`.
    GeneratorFn(fn(f64) -> f64),
    /// Normalized Pascal triangle: `w_{i,n} = C(n-1, i-1) / 2^{n-1}`.
    Pascal,
}

/// Row `n` of a weighting triangle.
pub fn weighting_triangle(scheme: &TriangleScheme, n: usize) -> Result<WeightVector> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    match scheme {
        TriangleScheme::CoefSequence(c) => {
            if c.len() < n {
                return Err(Error::InvalidParameter(format!(
                    "coefficient sequence shorter than n = {n}"
                )));
            }
            if c.iter().any(|&ci| ci < 0.0) || c[0] + c.get(1).copied().unwrap_or(0.0) <= 0.0 {
                return Err(Error::InvalidParameter(
                    "coefficients must be nonnegative with c1 + c2 > 0".into(),
                ));
            }
            WeightVector::normalized(&c[..n])
        }
        TriangleScheme::GeneratorFn(w) => {
            if (w(0.0)).abs() > 1e-12 || (w(1.0) - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(
                    "generator needs w(0)=0, w(1)=1".into(),
                ));
            }
            let nf = n as f64;
            let mut row = Vec::with_capacity(n);
            for i in 1..=n {
                let d = w(i as f64 / nf) - w((i - 1) as f64 / nf);
                if d < -1e-12 {
                    return Err(Error::InvalidParameter(
                        "generator must be nondecreasing".into(),
                    ));
                }
                row.push(d.max(0.0));
            }
            WeightVector::normalized(&row)
        }
        TriangleScheme::Pascal => {
            let mut row = vec![1.0f64];
            for _ in 1..n {
                let mut next = vec![1.0; row.len() + 1];
                for i in 1..row.len() {
                    next[i] = row[i - 1] + row[i];
                }
                row = next;
            }
            WeightVector::normalized(&row)
        }
    }
}

/// OWA weights reproducing the k-trimmed mean.
pub fn trimmed_weights(k: usize, n: usize) -> Result<WeightVector> {
    check_trim(k, n)?;
    let mut w = vec![0.0; n];
    for wi in w.iter_mut().take(n - k).skip(k) {
        *wi = 1.0 / (n - 2 * k) as f64;
    }
    WeightVector::normalized(&w)
}

/// OWA weights reproducing the k-Winsorized mean.
pub fn winsorized_weights(k: usize, n: usize) -> Result<WeightVector> {
    check_trim(k, n)?;
    let mut w = vec![1.0 / n as f64; n];
    for i in 0..k {
        w[i] = 0.0;
        w[n - 1 - i] = 0.0;
    }
    w[k] = (k + 1) as f64 / n as f64;
    w[n - 1 - k] = (k + 1) as f64 / n as f64;
    WeightVector::normalized(&w)
}

/// Stable permutation sorting `x` nondecreasingly; re-exported convenience.
pub fn sort_permutation(x: &RealVector) -> Vec<usize> {
    ordering_permutation(x.values())
}
