//! Spread and shape measures, the absolute-spread preorder and its
//! generators, Lorenz dominance, orness, weight entropy, an empirical
//! breakdown probe, and the circular mean.

use crate::error::{Error, Result};
use crate::means::{aggregate, quantile, MeanSpec};
use crate::order::{is_comonotonic, random_comonotonic_pair, rng_from_seed};
use crate::types::{RealVector, WeightVector};
use rand::Rng;

/// The shipped absolute spread measures.
#[derive(Debug, Clone, PartialEq)]
pub enum SpreadSpec {
    Var,
    Sd,
    Range,
    /// Interquartile range; the quantile parameterization defaults to
    /// type VII.
    Iqr {
        qtype: u8,
    },
    Mad,
    MeanError,
    GiniMd,
    /// `sum w_i (x_i - w'x)^2`
    Wd2Wam(WeightVector),
    /// `sum w_i |x_i - w'x|`
    Wd1Wam(WeightVector),
    /// `max_i |x_i - w'x|`
    WdInfWam(WeightVector),
    /// Normalized quadratic deviation; needs the data interval.
    Nwd2Wam(WeightVector),
    /// Normalized absolute deviation; needs the data interval.
    Nwd1Wam(WeightVector),
}

impl SpreadSpec {
    pub fn iqr() -> Self {
        SpreadSpec::Iqr { qtype: 7 }
    }
}

fn weighted_mean(w: &WeightVector, x: &[f64]) -> f64 {
    w.weights().iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Greatest subset weight not exceeding one half: exhaustive for n <= 20,
/// greedy sorted-prefix above (flagged approximate in the docs).
pub fn max_half_subset_weight(w: &WeightVector) -> f64 {
    let ws = w.weights();
    let n = ws.len();
    if n <= 20 {
        let mut best = 0.0f64;
        for mask in 0..(1usize << n) {
            let s: f64 = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| ws[i]).sum();
            if s <= 0.5 && s > best {
                best = s;
            }
        }
        best
    } else {
        let mut sorted = ws.to_vec();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut acc = 0.0;
        for v in sorted {
            if acc + v <= 0.5 {
                acc += v;
            }
        }
        acc
    }
}

/// Evaluates a spread measure. Normalized kinds require the vector to carry
/// its domain interval.
pub fn spread(spec: &SpreadSpec, x: &RealVector) -> Result<f64> {
    let v = x.values();
    let n = v.len();
    let check_len = |need: usize| -> Result<()> {
        if n < need {
            return Err(Error::InvalidParameter(format!("need n >= {need}")));
        }
        Ok(())
    };
    let check_weights = |w: &WeightVector| -> Result<()> {
        if w.len() != n {
            return Err(Error::LengthMismatch(w.len(), n));
        }
        Ok(())
    };
    match spec {
        SpreadSpec::Var => {
            check_len(2)?;
            let m = aggregate(MeanSpec::AMean, x)?;
            Ok(v.iter().map(|a| (a - m) * (a - m)).sum::<f64>() / (n - 1) as f64)
        }
        SpreadSpec::Sd => Ok(spread(&SpreadSpec::Var, x)?.sqrt()),
        SpreadSpec::Range => Ok(aggregate(MeanSpec::Max, x)? - aggregate(MeanSpec::Min, x)?),
        SpreadSpec::Iqr { qtype } => Ok(quantile(*qtype, 0.75, x)? - quantile(*qtype, 0.25, x)?),
        SpreadSpec::Mad => {
            let med = aggregate(MeanSpec::Median, x)?;
            let dev: Vec<f64> = v.iter().map(|a| (a - med).abs()).collect();
            Ok(1.4826 * aggregate(MeanSpec::Median, &RealVector::new(dev)?)?)
        }
        SpreadSpec::MeanError => {
            let m = aggregate(MeanSpec::AMean, x)?;
            let s: f64 = v.iter().map(|a| (a - m).abs()).sum();
            Ok((std::f64::consts::PI / 2.0).sqrt() * s / n as f64)
        }
        SpreadSpec::GiniMd => {
            check_len(2)?;
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += (v[i] - v[j]).abs();
                }
            }
            Ok(s / (n * (n - 1)) as f64)
        }
        SpreadSpec::Wd2Wam(w) => {
            check_weights(w)?;
            let m = weighted_mean(w, v);
            Ok(w.weights()
                .iter()
                .zip(v)
                .map(|(wi, a)| wi * (a - m) * (a - m))
                .sum())
        }
        SpreadSpec::Wd1Wam(w) => {
            check_weights(w)?;
            let m = weighted_mean(w, v);
            Ok(w.weights()
                .iter()
                .zip(v)
                .map(|(wi, a)| wi * (a - m).abs())
                .sum())
        }
        SpreadSpec::WdInfWam(w) => {
            check_weights(w)?;
            let m = weighted_mean(w, v);
            Ok(v.iter().map(|a| (a - m).abs()).fold(0.0, f64::max))
        }
        SpreadSpec::Nwd2Wam(w) => {
            check_weights(w)?;
            let (a, b) = x.domain().ok_or_else(|| {
                Error::InvalidParameter("normalized spread needs a domain".into())
            })?;
            let p = max_half_subset_weight(w);
            if p <= 0.0 {
                return Err(Error::InvalidParameter(
                    "degenerate weighting vector".into(),
                ));
            }
            let raw = spread(&SpreadSpec::Wd2Wam(w.clone()), x)?;
            Ok(raw.sqrt() / ((b - a) * (p * (1.0 - p)).sqrt()))
        }
        SpreadSpec::Nwd1Wam(w) => {
            check_weights(w)?;
            let (a, b) = x.domain().ok_or_else(|| {
                Error::InvalidParameter("normalized spread needs a domain".into())
            })?;
            let p = max_half_subset_weight(w);
            if p <= 0.0 {
                return Err(Error::InvalidParameter(
                    "degenerate weighting vector".into(),
                ));
            }
            let raw = spread(&SpreadSpec::Wd1Wam(w.clone()), x)?;
            Ok(raw / (2.0 * p * (1.0 - p) * (b - a)))
        }
    }
}

/// Consecutive gaps of the sorted vector.
pub fn diff_sorted(x: &RealVector) -> Vec<f64> {
    let s = x.sorted();
    s.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Running sums.
pub fn cumsum(x: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    x.iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect()
}

/// The "has not greater absolute spread" preorder, decided through
/// comonotonicity plus dominance of sorted gaps.
pub fn spread_leq(x: &RealVector, y: &RealVector) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if is_comonotonic(x.values(), y.values())?.is_none() {
        return Ok(false);
    }
    let dx = diff_sorted(x);
    let dy = diff_sorted(y);
    Ok(dx
        .iter()
        .zip(&dy)
        .all(|(a, b)| *a <= b + 1e-12 * a.abs().max(b.abs()).max(1.0)))
}

/// Generates a pair `x, y` with `x` certified to have no greater spread:
/// shrink the sorted gaps of `y` and apply a common random permutation.
pub fn gen_spread_pair(
    n: usize,
    seed: u64,
    interval: (f64, f64),
) -> Result<(RealVector, RealVector)> {
    if n < 2 {
        return Err(Error::InvalidParameter("need n >= 2".into()));
    }
    let (lo, hi) = interval;
    if !(lo < hi) {
        return Err(Error::InvalidParameter("empty interval".into()));
    }
    let mut rng = rng_from_seed(seed);
    let (ys, _) = random_comonotonic_pair(n, lo, hi, &mut rng);
    let mut sorted_y = ys.clone();
    sorted_y.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let gaps: Vec<f64> = sorted_y.windows(2).map(|w| w[1] - w[0]).collect();
    // shrink each gap, then place the shrunk chain inside the interval
    let shrunk: Vec<f64> = gaps.iter().map(|g| g * rng.gen_range(0.0..1.0)).collect();
    let total: f64 = shrunk.iter().sum();
    let start = rng.gen_range(lo..(hi - total).max(lo + f64::MIN_POSITIVE));
    let mut sorted_x = Vec::with_capacity(n);
    let mut acc = start;
    sorted_x.push(acc);
    for g in &shrunk {
        acc += g;
        sorted_x.push(acc.min(hi)); // rounding may overshoot the interval
    }
    // common permutation keeps the pair comonotonic
    let sigma = crate::order::random_permutation_with(n, &mut rng);
    let x: Vec<f64> = sigma.iter().map(|&i| sorted_x[i]).collect();
    let y: Vec<f64> = sigma.iter().map(|&i| sorted_y[i]).collect();
    let rx = RealVector::with_domain(x, lo, hi)?;
    let ry = RealVector::with_domain(y, lo, hi)?;
    debug_assert!(spread_leq(&rx, &ry)?);
    Ok((rx, ry))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelativeKind {
    Gini,
    Cv,
}

/// Unit-free spread: Gini coefficient or coefficient of variation.
pub fn relative(kind: RelativeKind, x: &RealVector) -> Result<f64> {
    let mean = aggregate(MeanSpec::AMean, x)?;
    if mean == 0.0 {
        return Err(Error::Domain("relative spread needs a nonzero mean".into()));
    }
    Ok(match kind {
        RelativeKind::Gini => spread(&SpreadSpec::GiniMd, x)? / (2.0 * mean),
        RelativeKind::Cv => spread(&SpreadSpec::Sd, x)? / mean,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Skewness,
    Kurtosis,
}

/// Sample skewness and excess kurtosis.
pub fn shape(kind: ShapeKind, x: &RealVector) -> Result<f64> {
    let v = x.values();
    let n = v.len();
    if n < 2 {
        return Err(Error::InvalidParameter("shape needs n >= 2".into()));
    }
    let m = aggregate(MeanSpec::AMean, x)?;
    let m2: f64 = v.iter().map(|a| (a - m) * (a - m)).sum::<f64>() / n as f64;
    if m2 == 0.0 {
        return Err(Error::Domain("shape needs a nonzero variance".into()));
    }
    Ok(match kind {
        ShapeKind::Skewness => {
            let m3: f64 = v.iter().map(|a| (a - m).powi(3)).sum::<f64>() / n as f64;
            let s2: f64 = v.iter().map(|a| (a - m) * (a - m)).sum::<f64>() / (n - 1) as f64;
            m3 / s2.powf(1.5)
        }
        ShapeKind::Kurtosis => {
            let m4: f64 = v.iter().map(|a| (a - m).powi(4)).sum::<f64>() / n as f64;
            m4 / (m2 * m2) - 3.0
        }
    })
}

/// Lorenz majorization of equal-mean vectors.
pub fn lorenz_leq(x: &RealVector, y: &RealVector) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let mx = aggregate(MeanSpec::AMean, x)?;
    let my = aggregate(MeanSpec::AMean, y)?;
    if (mx - my).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "lorenz order needs equal means: {mx} vs {my}"
        )));
    }
    let mut sx = x.sorted();
    let mut sy = y.sorted();
    sx.reverse();
    sy.reverse();
    let cx = cumsum(&sx);
    let cy = cumsum(&sy);
    Ok(cx.iter().zip(&cy).all(|(a, b)| *a <= b + 1e-9))
}

/// How to compute the orness measure.
#[derive(Debug, Clone)]
pub enum OrnessMethod {
    /// Closed form for an ordered weighted average given its weights
    /// (largest-first convention).
    OwaExact(WeightVector),
    /// Monte Carlo over the unit cube.
    Mc { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct MonteCarloValue {
    pub value: f64,
    pub std_error: f64,
}

/// Normalized position of an idempotent function between the minimum and the
/// maximum over the unit cube.
pub fn orness<F>(f: &F, n: usize, method: &OrnessMethod) -> Result<MonteCarloValue>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    if n < 2 {
        return Err(Error::InvalidParameter("orness needs n >= 2".into()));
    }
    match method {
        OrnessMethod::OwaExact(w) => {
            if w.len() != n {
                return Err(Error::LengthMismatch(w.len(), n));
            }
            let v: f64 = w
                .weights()
                .iter()
                .enumerate()
                .map(|(i, wi)| (n - (i + 1)) as f64 / (n - 1) as f64 * wi)
                .sum();
            Ok(MonteCarloValue {
                value: v,
                std_error: 0.0,
            })
        }
        OrnessMethod::Mc { samples, seed } => {
            if *samples < 1000 {
                return Err(Error::InvalidParameter("need at least 1000 samples".into()));
            }
            let mut rng = rng_from_seed(*seed);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..*samples {
                let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
                let v = f(&x);
                sum += v;
                sum_sq += v * v;
            }
            let m = *samples as f64;
            let mean = sum / m;
            let var = (sum_sq / m - mean * mean).max(0.0) / (m - 1.0);
            // orness = (E F - E Min) / (E Max - E Min) with the exact
            // moments of the order statistics of the uniform cube
            let nf = n as f64;
            let lo = 1.0 / (nf + 1.0);
            let hi = nf / (nf + 1.0);
            let scale = 1.0 / (hi - lo);
            Ok(MonteCarloValue {
                value: (mean - lo) * scale,
                std_error: var.sqrt() * scale,
            })
        }
    }
}

/// Plain average of the function over the unit cube with its standard error.
pub fn average_value<F>(f: &F, n: usize, samples: usize, seed: u64) -> Result<MonteCarloValue>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    if n == 0 || samples < 2 {
        return Err(Error::InvalidParameter(
            "bad monte carlo configuration".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let v = f(&x);
        sum += v;
        sum_sq += v * v;
    }
    let m = samples as f64;
    let mean = sum / m;
    let var = (sum_sq / m - mean * mean).max(0.0) / (m - 1.0);
    Ok(MonteCarloValue {
        value: mean,
        std_error: var.sqrt(),
    })
}

/// Average orness: the mean of `(F - Min) / (Max - Min)` with 0/0 = 0.
pub fn aveorness_mc<F>(f: &F, n: usize, samples: usize, seed: u64) -> Result<MonteCarloValue>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    if n < 2 || samples < 1000 {
        return Err(Error::InvalidParameter(
            "bad monte carlo configuration".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let mn = x.iter().cloned().fold(f64::INFINITY, f64::min);
        let mx = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let v = if mx == mn {
            0.0
        } else {
            (f(&x) - mn) / (mx - mn)
        };
        sum += v;
        sum_sq += v * v;
    }
    let m = samples as f64;
    let mean = sum / m;
    let var = (sum_sq / m - mean * mean).max(0.0) / (m - 1.0);
    Ok(MonteCarloValue {
        value: mean,
        std_error: var.sqrt(),
    })
}

/// Closed-form orness of the geometric mean.
pub fn gmean_orness(n: usize) -> f64 {
    let nf = n as f64;
    (nf + 1.0) / (nf - 1.0) * (nf / (nf + 1.0)).powi(n as i32) - 1.0 / (nf - 1.0)
}

/// Shannon entropy of a weighting vector with 0 log 0 = 0.
pub fn entropy(w: &WeightVector) -> f64 {
    w.weights()
        .iter()
        .map(|&wi| if wi > 0.0 { -wi * wi.ln() } else { 0.0 })
        .sum()
}

/// Empirical breakdown surrogate: the smallest fraction of coordinates whose
/// replacement by +/- `magnitude` moves the output far beyond the original
/// data scale (by more than `sqrt(magnitude)` times that scale). A fixed
/// absolute threshold of half the contamination would misclassify the
/// arithmetic mean, whose shift under a single outlier is `magnitude / n`:
/// still unbounded, but below any fixed fraction of `magnitude`.
pub fn breakdown_probe<F>(f: &F, x: &RealVector, magnitude: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    if !(magnitude > 0.0) || !magnitude.is_finite() {
        return Err(Error::InvalidParameter(
            "magnitude must be positive and finite".into(),
        ));
    }
    let n = x.len();
    let base = f(x.values());
    let scale = x.values().iter().fold(1.0f64, |a, v| a.max(v.abs()));
    let threshold = magnitude.sqrt() * scale;
    for m in 1..=n {
        // contaminate the m largest positions, probing both signs
        for sign in [1.0, -1.0] {
            let mut v = x.values().to_vec();
            let order = crate::order::ordering_permutation(x.values());
            for k in 0..m {
                v[order[n - 1 - k]] = sign * magnitude;
            }
            let moved = f(&v);
            if (moved - base).abs() > threshold {
                return Ok(m as f64 / n as f64);
            }
        }
    }
    Ok(1.0)
}

/// Circular mean of angles in `[-pi, pi)`.
pub fn circ_mean(theta: &RealVector) -> Result<f64> {
    let n = theta.len() as f64;
    let s: f64 = theta.values().iter().map(|t| t.sin()).sum::<f64>() / n;
    let c: f64 = theta.values().iter().map(|t| t.cos()).sum::<f64>() / n;
    let r = (s * s + c * c).sqrt();
    if r < 1e-12 {
        return Err(Error::Domain(
            "resultant length is zero; mean undefined".into(),
        ));
    }
    Ok(s.atan2(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::means::owa;

    fn rv(v: &[f64]) -> RealVector {
        RealVector::new(v.to_vec()).unwrap()
    }

    fn all_specs(n: usize) -> Vec<SpreadSpec> {
        let w = WeightVector::uniform(n).unwrap();
        let skew = {
            let mut d: Vec<f64> = (1..=n).map(|i| i as f64).collect();
            let s: f64 = d.iter().sum();
            for v in d.iter_mut() {
                *v /= s;
            }
            WeightVector::new(d).unwrap()
        };
        vec![
            SpreadSpec::Var,
            SpreadSpec::Sd,
            SpreadSpec::Range,
            SpreadSpec::iqr(),
            SpreadSpec::Mad,
            SpreadSpec::MeanError,
            SpreadSpec::GiniMd,
            SpreadSpec::Wd2Wam(w.clone()),
            SpreadSpec::Wd1Wam(skew.clone()),
            SpreadSpec::WdInfWam(w.clone()),
            SpreadSpec::Nwd2Wam(w),
            SpreadSpec::Nwd1Wam(skew),
        ]
    }

    #[test]
    fn spread_reference_values() {
        assert_eq!(
            spread(&SpreadSpec::Var, &rv(&[1.0, 2.0, 3.0])).unwrap(),
            1.0
        );
        let mad = spread(&SpreadSpec::Mad, &rv(&[1.0, 2.0, 4.0, 8.0, 16.0])).unwrap();
        // 1.4826 * median(|x - 4|) = 1.4826 * 3
        assert!((mad - 1.4826 * 3.0).abs() < 1e-12);
        let md = spread(&SpreadSpec::GiniMd, &rv(&[0.0, 2.0, 4.0])).unwrap();
        assert!((md - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn spread_vanishes_on_constants() {
        for n in [2usize, 5, 9] {
            let x = RealVector::with_domain(vec![0.37; n], 0.0, 1.0).unwrap();
            for spec in all_specs(n) {
                let v = spread(&spec, &x).unwrap();
                assert!(v.abs() < 1e-12, "{spec:?}: {v}");
            }
        }
    }

    #[test]
    fn spread_monotone_under_preorder() {
        // a compressed run of the acceptance sweep
        for n in [3usize, 6] {
            let specs = all_specs(n);
            for seed in 0..500 {
                let (x, y) = gen_spread_pair(n, seed + 1000 * n as u64, (0.0, 1.0)).unwrap();
                assert!(spread_leq(&x, &y).unwrap());
                for spec in &specs {
                    let sx = spread(spec, &x).unwrap();
                    let sy = spread(spec, &y).unwrap();
                    assert!(sx <= sy + 1e-12, "{spec:?}: {sx} > {sy}");
                }
            }
        }
    }

    #[test]
    fn preorder_translation_and_scaling() {
        let x = rv(&[0.2, 0.5, 0.1]);
        let shifted = rv(&[0.5, 0.8, 0.4]);
        assert!(spread_leq(&x, &shifted).unwrap());
        assert!(spread_leq(&shifted, &x).unwrap());
        let scaled = rv(&[0.4, 1.0, 0.2]);
        assert!(spread_leq(&x, &scaled).unwrap());
        assert!(!spread_leq(&scaled, &x).unwrap());
        let c = rv(&[0.3, 0.3, 0.3]);
        assert!(spread_leq(&c, &x).unwrap());
        // anti-monotone pairs are incomparable
        assert!(!spread_leq(&rv(&[0.0, 1.0]), &rv(&[1.0, 0.0])).unwrap());
    }

    #[test]
    fn diff_and_cumsum_reconstruct() {
        assert_eq!(diff_sorted(&rv(&[3.0, 1.0, 2.0])), vec![1.0, 1.0]);
        assert_eq!(diff_sorted(&rv(&[5.0; 4])), vec![0.0; 3]);
        let mut rng = rng_from_seed(5);
        for _ in 0..200 {
            let n = rng.gen_range(2..8);
            let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let x = rv(&xs);
            let d = diff_sorted(&x);
            let s = x.sorted();
            let mut chain = vec![s[0]];
            chain.extend(cumsum(&d).iter().map(|v| v + s[0]));
            for (a, b) in chain.iter().zip(&s) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn gini_and_cv() {
        assert!(
            (relative(RelativeKind::Gini, &rv(&[0.0, 2.0, 4.0])).unwrap() - 2.0 / 3.0).abs()
                < 1e-12
        );
        assert!(
            (relative(RelativeKind::Gini, &rv(&[2.0, 4.0, 6.0])).unwrap() - 1.0 / 3.0).abs()
                < 1e-12
        );
        assert!(
            (relative(RelativeKind::Gini, &rv(&[0.0, 3.0, 5.0])).unwrap() - 5.0 / 8.0).abs()
                < 1e-12
        );
        assert_eq!(relative(RelativeKind::Cv, &rv(&[4.0, 4.0])).unwrap(), 0.0);
        // scale invariance
        let mut rng = rng_from_seed(7);
        for _ in 0..200 {
            let xs: Vec<f64> = (0..5).map(|_| rng.gen_range(0.1..10.0)).collect();
            let s = rng.gen_range(0.1..10.0);
            let scaled: Vec<f64> = xs.iter().map(|v| v * s).collect();
            let a = relative(RelativeKind::Gini, &rv(&xs)).unwrap();
            let b = relative(RelativeKind::Gini, &rv(&scaled)).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
        // the fixed counterexample to spread monotonicity of Gini:
        // (0,2,4) precedes (0,3,5) in the preorder yet Gini decreases
        let x = rv(&[0.0, 2.0, 4.0]);
        let y = rv(&[0.0, 3.0, 5.0]);
        assert!(spread_leq(&x, &y).unwrap());
        assert!(
            relative(RelativeKind::Gini, &y).unwrap() < relative(RelativeKind::Gini, &x).unwrap()
        );
        // and for the coefficient of variation on the same pair
        assert!(relative(RelativeKind::Cv, &y).unwrap() < relative(RelativeKind::Cv, &x).unwrap());
    }

    #[test]
    fn shape_measures() {
        assert_eq!(
            shape(ShapeKind::Skewness, &rv(&[1.0, 2.0, 3.0])).unwrap(),
            0.0
        );
        // mirrored samples flip the sign exactly
        let mut rng = rng_from_seed(9);
        for _ in 0..100 {
            let xs: Vec<f64> = (0..7).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let mirrored: Vec<f64> = xs.iter().map(|v| -v).collect();
            let a = shape(ShapeKind::Skewness, &rv(&xs)).unwrap();
            let b = shape(ShapeKind::Skewness, &rv(&mirrored)).unwrap();
            assert!((a + b).abs() < 1e-10);
        }
        // a large normal-ish sample has both measures near zero
        let mut rng = rng_from_seed(11);
        let xs: Vec<f64> = (0..20_000)
            .map(|_| {
                let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            })
            .collect();
        let x = rv(&xs);
        assert!(shape(ShapeKind::Skewness, &x).unwrap().abs() < 0.2);
        assert!(shape(ShapeKind::Kurtosis, &x).unwrap().abs() < 0.2);
    }

    #[test]
    fn lorenz_order() {
        let x = rv(&[1.0, 2.0, 3.0]);
        let flat = rv(&[2.0, 2.0, 2.0]);
        assert!(lorenz_leq(&flat, &x).unwrap());
        assert!(lorenz_leq(&x, &x).unwrap());
        assert!(!lorenz_leq(&x, &flat).unwrap());
        // unequal means are a domain error, not `false`
        assert!(matches!(
            lorenz_leq(&x, &rv(&[1.0, 2.0, 4.0])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn orness_reference_functions() {
        let mean_fn = |spec: MeanSpec| {
            move |v: &[f64]| aggregate(spec, &RealVector::new(v.to_vec()).unwrap()).unwrap()
        };
        let n = 4;
        let m = 100_000;
        let f_min = mean_fn(MeanSpec::Min);
        let r = orness(
            &f_min,
            n,
            &OrnessMethod::Mc {
                samples: m,
                seed: 3,
            },
        )
        .unwrap();
        assert!(r.value.abs() <= 3.0 * r.std_error.max(1e-4), "{r:?}");
        let f_max = mean_fn(MeanSpec::Max);
        let r = orness(
            &f_max,
            n,
            &OrnessMethod::Mc {
                samples: m,
                seed: 4,
            },
        )
        .unwrap();
        assert!(
            (r.value - 1.0).abs() <= 3.0 * r.std_error.max(1e-4),
            "{r:?}"
        );
        let f_am = mean_fn(MeanSpec::AMean);
        let r = orness(
            &f_am,
            n,
            &OrnessMethod::Mc {
                samples: m,
                seed: 5,
            },
        )
        .unwrap();
        assert!((r.value - 0.5).abs() <= 3.0 * r.std_error, "{r:?}");
        // geometric mean closed form
        for n in [2usize, 3, 4] {
            let f = mean_fn(MeanSpec::GMean);
            let r = orness(
                &f,
                n,
                &OrnessMethod::Mc {
                    samples: m,
                    seed: 6,
                },
            )
            .unwrap();
            assert!(
                (r.value - gmean_orness(n)).abs() <= 3.0 * r.std_error,
                "n={n}: {r:?} vs {}",
                gmean_orness(n)
            );
        }
    }

    #[test]
    fn owa_orness_exact_vs_mc() {
        let mut rng = rng_from_seed(13);
        for n in 2..=6usize {
            let d: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
            let w = WeightVector::normalized(&d).unwrap();
            let exact = orness(
                &|_: &[f64]| unreachable!(),
                n,
                &OrnessMethod::OwaExact(w.clone()),
            )
            .unwrap()
            .value;
            // MC over the ordered weighted average with weights attached
            // largest-first, the convention the closed form refers to
            let w2 = w.clone();
            let f = move |v: &[f64]| {
                let mut rev: Vec<f64> = w2.weights().to_vec();
                rev.reverse();
                let rw = WeightVector::normalized(&rev).unwrap();
                owa(&rw, &RealVector::new(v.to_vec()).unwrap()).unwrap()
            };
            let mc = orness(
                &f,
                n,
                &OrnessMethod::Mc {
                    samples: 100_000,
                    seed: n as u64,
                },
            )
            .unwrap();
            assert!(
                (mc.value - exact).abs() <= 3.0 * mc.std_error,
                "n={n}: mc {} vs exact {exact} (se {})",
                mc.value,
                mc.std_error
            );
        }
    }

    #[test]
    fn average_of_quadratic_mean_matches_reference_table() {
        // the reference integral of the two-argument quadratic mean over the
        // unit square is (1/3)(1 + asinh(1)/sqrt 2) = 0.5410751
        let f =
            |v: &[f64]| aggregate(MeanSpec::QMean, &RealVector::new(v.to_vec()).unwrap()).unwrap();
        let r = average_value(&f, 2, 400_000, 17).unwrap();
        assert!((r.value - 0.5410751).abs() <= 3.0 * r.std_error, "{r:?}");
        // the two-argument harmonic mean averages to (4/3)(1 - log 2)
        let f = |v: &[f64]| {
            let v: Vec<f64> = v.iter().map(|a| a.max(1e-12)).collect();
            aggregate(MeanSpec::HMean, &RealVector::new(v).unwrap()).unwrap()
        };
        let r = average_value(&f, 2, 400_000, 19).unwrap();
        let expected = 4.0 / 3.0 * (1.0 - std::f64::consts::LN_2);
        assert!(
            (r.value - expected).abs() <= 3.0 * r.std_error,
            "{r:?} vs {expected}"
        );
        // cube-average anchors of the extremes: 1/(n+1) and n/(n+1)
        for n in [2usize, 3, 5] {
            let f = |v: &[f64]| {
                aggregate(MeanSpec::Min, &RealVector::new(v.to_vec()).unwrap()).unwrap()
            };
            let r = average_value(&f, n, 200_000, 23).unwrap();
            assert!((r.value - 1.0 / (n as f64 + 1.0)).abs() <= 3.0 * r.std_error);
            let f = |v: &[f64]| {
                aggregate(MeanSpec::Max, &RealVector::new(v.to_vec()).unwrap()).unwrap()
            };
            let r = average_value(&f, n, 200_000, 29).unwrap();
            assert!((r.value - n as f64 / (n as f64 + 1.0)).abs() <= 3.0 * r.std_error);
        }
    }

    #[test]
    fn entropy_extremes() {
        for n in [2usize, 5, 8] {
            let u = WeightVector::uniform(n).unwrap();
            assert!((entropy(&u) - (n as f64).ln()).abs() < 1e-12);
            let mut e = vec![0.0; n];
            e[n / 2] = 1.0;
            assert_eq!(entropy(&WeightVector::new(e).unwrap()), 0.0);
        }
    }

    #[test]
    fn breakdown_probe_classics() {
        let xs: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        let x = rv(&xs);
        let amean =
            |v: &[f64]| aggregate(MeanSpec::AMean, &RealVector::new(v.to_vec()).unwrap()).unwrap();
        let median =
            |v: &[f64]| aggregate(MeanSpec::Median, &RealVector::new(v.to_vec()).unwrap()).unwrap();
        assert_eq!(breakdown_probe(&amean, &x, 1e12).unwrap(), 0.1);
        let med_bp = breakdown_probe(&median, &x, 1e12).unwrap();
        assert!(med_bp >= 0.4, "median probe {med_bp}");
        assert!(med_bp <= 0.6, "median probe {med_bp}");
    }

    #[test]
    fn circular_mean_cases() {
        use std::f64::consts::PI;
        assert!((circ_mean(&rv(&[0.3, 0.3])).unwrap() - 0.3).abs() < 1e-12);
        assert!((circ_mean(&rv(&[0.0, PI / 2.0])).unwrap() - PI / 4.0).abs() < 1e-12);
        // wraparound: angles near the cut average to +/- pi, not 0
        let m = circ_mean(&rv(&[PI - 0.1, -PI + 0.1])).unwrap();
        assert!((m.abs() - PI).abs() < 1e-9, "{m}");
        // antipodal pair has no mean
        assert!(circ_mean(&rv(&[0.0, PI])).is_err());
    }

    #[test]
    fn nwd_bounds() {
        // the normalized measures stay below one and approach it on
        // two-point extreme configurations
        let w = WeightVector::uniform(2).unwrap();
        let x = RealVector::with_domain(vec![0.0, 1.0], 0.0, 1.0).unwrap();
        let v = spread(&SpreadSpec::Nwd2Wam(w.clone()), &x).unwrap();
        assert!((v - 1.0).abs() < 1e-9, "{v}");
        let v = spread(&SpreadSpec::Nwd1Wam(w), &x).unwrap();
        assert!((v - 1.0).abs() < 1e-9, "{v}");
        let mut rng = rng_from_seed(19);
        for n in [2usize, 4, 7] {
            let w = WeightVector::uniform(n).unwrap();
            for _ in 0..200 {
                let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
                let x = RealVector::with_domain(xs, 0.0, 1.0).unwrap();
                for spec in [
                    SpreadSpec::Nwd2Wam(w.clone()),
                    SpreadSpec::Nwd1Wam(w.clone()),
                ] {
                    let v = spread(&spec, &x).unwrap();
                    assert!(v <= 1.0 + 1e-9, "{spec:?}: {v}");
                }
            }
        }
    }
}
