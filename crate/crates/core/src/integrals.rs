//! Discrete monotone measures and the Choquet, Sugeno, and Shilkret
//! integrals, plus weighted lattice polynomial functions.

use crate::error::{Error, Result};
use crate::order::ordering_permutation;
use crate::types::RealVector;
use std::collections::BTreeMap;

/// Maximum ground-set size for full-table measures.
pub const MAX_FULL_TABLE_N: usize = 24;

/// Internal representation of a monotone measure on subsets of `{0..n-1}`.
#[derive(Debug, Clone, PartialEq)]
enum Repr {
    /// `values[mask]` = measure of the subset encoded by `mask`.
    FullTable(Vec<f64>),
    /// Symmetric measure: `phi[k]` = measure of any k-element subset.
    Symmetric(Vec<f64>),
    /// Additive measure generated by per-element weights.
    Additive(Vec<f64>),
}

/// A capacity: monotone set function with `mu(empty) = 0`, `mu(full) > 0`.
/// Values may be `f64::INFINITY`; products use the `0 * inf = 0` convention.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneMeasure {
    n: usize,
    repr: Repr,
}

/// Multiplication with the measure-theoretic `0 * inf = 0` convention.
pub fn mul_zero_inf(t: f64, m: f64) -> f64 {
    if t == 0.0 || m == 0.0 {
        0.0
    } else {
        t * m
    }
}

impl MonotoneMeasure {
    /// Builds a measure from a full table indexed by subset bitmask.
    /// Monotonicity is verified exhaustively.
    pub fn from_table(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_FULL_TABLE_N {
            return Err(Error::InvalidParameter(format!(
                "full table needs 1 <= n <= {MAX_FULL_TABLE_N}"
            )));
        }
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!(
                "table has {} entries, expected {}",
                values.len(),
                1 << n
            )));
        }
        if values[0] != 0.0 {
            return Err(Error::Domain("mu(empty) must be 0".into()));
        }
        let full = (1usize << n) - 1;
        if !(values[full] > 0.0) {
            return Err(Error::Domain("mu(full) must be positive".into()));
        }
        for (mask, &v) in values.iter().enumerate() {
            if v.is_nan() || v < 0.0 {
                return Err(Error::Domain("measure values must be >= 0".into()));
            }
            for i in 0..n {
                if mask & (1 << i) == 0 && v > values[mask | (1 << i)] {
                    return Err(Error::Domain(format!(
                        "monotonicity violated between masks {mask} and {}",
                        mask | (1 << i)
                    )));
                }
            }
        }
        Ok(MonotoneMeasure {
            n,
            repr: Repr::FullTable(values),
        })
    }

    /// Symmetric measure `mu(U) = phi(|U|)` given `phi(0..=n)`.
    pub fn symmetric(n: usize, phi: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if phi.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "phi has {} entries, expected {}",
                phi.len(),
                n + 1
            )));
        }
        if phi[0] != 0.0 || !(phi[n] > 0.0) {
            return Err(Error::Domain("need phi(0) = 0 and phi(n) > 0".into()));
        }
        if phi.windows(2).any(|w| w[0] > w[1]) || phi.iter().any(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::Domain(
                "phi must be nondecreasing and nonnegative".into(),
            ));
        }
        Ok(MonotoneMeasure {
            n,
            repr: Repr::Symmetric(phi),
        })
    }

    /// Counting measure `mu(U) = |U|`.
    pub fn counting(n: usize) -> Result<Self> {
        Self::symmetric(n, (0..=n).map(|k| k as f64).collect())
    }

    /// Additive measure with the given nonnegative element weights.
    pub fn additive(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyInput);
        }
        if weights.iter().any(|w| w.is_nan() || *w < 0.0) {
            return Err(Error::Domain("weights must be >= 0".into()));
        }
        if !(weights.iter().sum::<f64>() > 0.0) {
            return Err(Error::Domain("mu(full) must be positive".into()));
        }
        let n = weights.len();
        Ok(MonotoneMeasure {
            n,
            repr: Repr::Additive(weights),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Measure of the subset encoded by `mask`.
    pub fn measure_mask(&self, mask: usize) -> f64 {
        match &self.repr {
            Repr::FullTable(t) => t[mask],
            Repr::Symmetric(phi) => phi[mask.count_ones() as usize],
            Repr::Additive(w) => {
                let mut s = 0.0;
                for (i, wi) in w.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        s += wi;
                    }
                }
                s
            }
        }
    }

    /// Measure of the set of the `k` top-ranked elements, for sorted-scan
    /// integrals. `upper_mask` is used for full tables.
    fn measure_upper(&self, k: usize, upper_mask: usize) -> f64 {
        match &self.repr {
            Repr::FullTable(t) => t[upper_mask],
            Repr::Symmetric(phi) => phi[k],
            Repr::Additive(_) => self.measure_mask(upper_mask),
        }
    }

    /// Serializes a full-table measure as a JSON map from decimal bitmask
    /// strings to values.
    pub fn to_json(&self) -> Result<String> {
        match &self.repr {
            Repr::FullTable(t) => {
                let map: BTreeMap<usize, f64> = t.iter().cloned().enumerate().collect();
                let string_map: BTreeMap<String, f64> =
                    map.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
                serde_json::to_string(&string_map)
                    .map_err(|e| Error::InvalidParameter(e.to_string()))
            }
            _ => Err(Error::InvalidParameter(
                "only full tables serialize to JSON".into(),
            )),
        }
    }

    /// Parses the JSON bitmask map produced by [`Self::to_json`].
    /// Missing entries are rejected.
    pub fn from_json(n: usize, json: &str) -> Result<Self> {
        let map: BTreeMap<String, f64> =
            serde_json::from_str(json).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        let size = 1usize << n;
        let mut values = vec![f64::NAN; size];
        for (k, v) in map {
            let mask: usize = k
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad bitmask key {k:?}")))?;
            if mask >= size {
                return Err(Error::InvalidParameter(format!(
                    "bitmask {mask} out of range"
                )));
            }
            values[mask] = v;
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidParameter("incomplete measure table".into()));
        }
        Self::from_table(n, values)
    }
}

fn check_input(mu: &MonotoneMeasure, x: &RealVector) -> Result<()> {
    if x.len() != mu.n {
        return Err(Error::LengthMismatch(x.len(), mu.n));
    }
    if x.values().iter().any(|&v| v < 0.0) {
        return Err(Error::Domain("integrals need x >= 0".into()));
    }
    Ok(())
}

/// Walks the nondecreasing arrangement of `x`, handing each level value and
/// the measure of its upper set to `step`.
fn sorted_scan<F: FnMut(f64, f64, f64)>(mu: &MonotoneMeasure, x: &RealVector, mut step: F) {
    let v = x.values();
    let n = v.len();
    let sigma = ordering_permutation(v);
    let mut upper_mask = (1usize << n) - 1;
    let mut prev = 0.0;
    for (i, &idx) in sigma.iter().enumerate() {
        let m = mu.measure_upper(n - i, upper_mask);
        step(v[idx], prev, m);
        prev = v[idx];
        upper_mask &= !(1 << idx);
    }
}

/// Discrete Choquet integral.
///
/// ```
/// use fusekit::integrals::{choquet, MonotoneMeasure};
/// use fusekit::RealVector;
///
/// // with the counting measure the integral is the plain sum
/// let mu = MonotoneMeasure::counting(4).unwrap();
/// let x = RealVector::new(vec![60.0, 30.0, 10.0, 4.0]).unwrap();
/// assert_eq!(choquet(&mu, &x).unwrap(), 104.0);
/// ```
pub fn choquet(mu: &MonotoneMeasure, x: &RealVector) -> Result<f64> {
    check_input(mu, x)?;
    let mut acc = 0.0;
    sorted_scan(mu, x, |xi, prev, m| {
        acc += mul_zero_inf(xi - prev, m);
    });
    Ok(acc)
}

/// Discrete Sugeno integral.
pub fn sugeno(mu: &MonotoneMeasure, x: &RealVector) -> Result<f64> {
    check_input(mu, x)?;
    let mut acc = 0.0f64;
    sorted_scan(mu, x, |xi, _, m| {
        acc = acc.max(xi.min(m));
    });
    Ok(acc)
}

/// Discrete Shilkret integral (with `0 * inf = 0`).
pub fn shilkret(mu: &MonotoneMeasure, x: &RealVector) -> Result<f64> {
    check_input(mu, x)?;
    let mut acc = 0.0f64;
    sorted_scan(mu, x, |xi, _, m| {
        acc = acc.max(mul_zero_inf(xi, m));
    });
    Ok(acc)
}

/// A weighted lattice polynomial function: nonempty index families with
/// thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePolySpec {
    families: Vec<Vec<usize>>,
    thresholds: Vec<f64>,
}

impl LatticePolySpec {
    pub fn new(families: Vec<Vec<usize>>, thresholds: Vec<f64>) -> Result<Self> {
        if families.is_empty() {
            return Err(Error::EmptyInput);
        }
        if families.len() != thresholds.len() {
            return Err(Error::LengthMismatch(families.len(), thresholds.len()));
        }
        if families.iter().any(|a| a.is_empty()) {
            return Err(Error::InvalidParameter("families must be nonempty".into()));
        }
        Ok(LatticePolySpec {
            families,
            thresholds,
        })
    }
}

/// `max_j (min_{i in A_j} x_i  /\  v_j)`.
pub fn wlpf(spec: &LatticePolySpec, x: &RealVector) -> Result<f64> {
    let v = x.values();
    let mut acc = f64::NEG_INFINITY;
    for (family, &thr) in spec.families.iter().zip(&spec.thresholds) {
        let mut inner = thr;
        for &i in family {
            if i >= v.len() {
                return Err(Error::DimensionMismatch(format!("index {i} out of range")));
            }
            inner = inner.min(v[i]);
        }
        acc = acc.max(inner);
    }
    Ok(acc)
}

/// Ordered weighted maximum; `v` must be nonincreasing.
pub fn owmax(v: &[f64], x: &RealVector) -> Result<f64> {
    if v.len() != x.len() {
        return Err(Error::LengthMismatch(v.len(), x.len()));
    }
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter(
            "owmax needs nonincreasing v".into(),
        ));
    }
    let s = x.sorted();
    Ok(v.iter()
        .zip(&s)
        .map(|(vi, xi)| vi.min(*xi))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Ordered weighted minimum; `v` must be nondecreasing; `b` is the domain's
/// upper bound.
pub fn owmin(v: &[f64], x: &RealVector, b: f64) -> Result<f64> {
    if v.len() != x.len() {
        return Err(Error::LengthMismatch(v.len(), x.len()));
    }
    if v.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(
            "owmin needs nondecreasing v".into(),
        ));
    }
    let s = x.sorted();
    Ok(v.iter()
        .zip(&s)
        .map(|(vi, xi)| (b - vi).max(*xi))
        .fold(f64::INFINITY, f64::min))
}

/// Weighted maximum `max_i (v_i /\ x_i)`.
pub fn wmax(v: &[f64], x: &RealVector) -> Result<f64> {
    if v.len() != x.len() {
        return Err(Error::LengthMismatch(v.len(), x.len()));
    }
    Ok(v.iter()
        .zip(x.values())
        .map(|(vi, xi)| vi.min(*xi))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Weighted minimum `min_i ((b - v_i) \/ x_i)`.
pub fn wmin(v: &[f64], x: &RealVector, b: f64) -> Result<f64> {
    if v.len() != x.len() {
        return Err(Error::LengthMismatch(v.len(), x.len()));
    }
    Ok(v.iter()
        .zip(x.values())
        .map(|(vi, xi)| (b - vi).max(*xi))
        .fold(f64::INFINITY, f64::min))
}
