//! Learning the weights of weighted (quasi-)arithmetic means from exemplar
//! data under least-squares, least-absolute-deviation, and Chebyshev
//! criteria, with rank-preservation penalties, regularization, and power-mean
//! exponent search.

use crate::error::{Error, Result};
use crate::optim::{
    brent_minimize, lp_solve, qn_minimize, qp_solve, LpProblem, QnOptions, QpProblem, Relation,
    Status,
};
use crate::order::rng_from_seed;
use crate::types::{Generator, WeightVector};
use rand::Rng;

/// Exemplar data: `x` holds `m` columns of `n` features each, `y` the
/// targets.
#[derive(Debug, Clone)]
pub struct FitData {
    n: usize,
    m: usize,
    /// column-major: `x[j]` is the j-th exemplar (length `n`)
    columns: Vec<Vec<f64>>,
    y: Vec<f64>,
}

impl FitData {
    pub fn new(columns: Vec<Vec<f64>>, y: Vec<f64>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = columns[0].len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch("ragged exemplar matrix".into()));
        }
        if columns.len() != y.len() {
            return Err(Error::LengthMismatch(columns.len(), y.len()));
        }
        if columns
            .iter()
            .flatten()
            .chain(y.iter())
            .any(|v| !v.is_finite())
        {
            return Err(Error::NonFinite("exemplar data".into()));
        }
        Ok(FitData {
            n,
            m: y.len(),
            columns,
            y,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Applies the generator elementwise to features and targets.
    pub fn transformed(&self, phi: Generator) -> Result<FitData> {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|&v| phi.phi(v)).collect::<Result<Vec<f64>>>())
            .collect::<Result<Vec<_>>>()?;
        let y = self
            .y
            .iter()
            .map(|&v| phi.phi(v))
            .collect::<Result<Vec<f64>>>()?;
        FitData::new(columns, y)
    }

    /// Replaces each exemplar by its sorted version, which turns weighted-mean
    /// fitting into OWA weight fitting.
    pub fn sorted_columns(&self) -> FitData {
        let columns = self
            .columns
            .iter()
            .map(|c| {
                let mut s = c.clone();
                s.sort_by(|a, b| a.partial_cmp(b).unwrap());
                s
            })
            .collect();
        FitData {
            n: self.n,
            m: self.m,
            columns,
            y: self.y.clone(),
        }
    }

    /// Per-exemplar importance by row scaling: exemplar `j` is scaled by
    /// `sqrt(v_j)` for the quadratic criterion or `v_j` for linear ones.
    pub fn scaled(&self, factors: &[f64]) -> Result<FitData> {
        if factors.len() != self.m {
            return Err(Error::LengthMismatch(factors.len(), self.m));
        }
        let columns = self
            .columns
            .iter()
            .zip(factors)
            .map(|(c, &f)| c.iter().map(|v| v * f).collect())
            .collect();
        let y = self.y.iter().zip(factors).map(|(v, &f)| v * f).collect();
        FitData::new(columns, y)
    }

    /// `w' x^{(j)}` for each exemplar.
    pub fn predictions(&self, w: &[f64]) -> Vec<f64> {
        self.columns
            .iter()
            .map(|c| c.iter().zip(w).map(|(x, w)| x * w).sum())
            .collect()
    }

    fn xxt(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.n]; self.n];
        for col in &self.columns {
            for i in 0..self.n {
                for j in 0..self.n {
                    d[i][j] += col[i] * col[j];
                }
            }
        }
        d
    }

    fn xyt(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.n];
        for (col, &yj) in self.columns.iter().zip(&self.y) {
            for i in 0..self.n {
                v[i] += col[i] * yj;
            }
        }
        v
    }
}

/// Residual norms of a fitted weight vector on the data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitErrors {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

pub fn fit_errors(data: &FitData, w: &[f64]) -> FitErrors {
    let pred = data.predictions(w);
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    let mut linf = 0.0f64;
    for (p, y) in pred.iter().zip(data.y()) {
        let r = (p - y).abs();
        l1 += r;
        l2 += r * r;
        linf = linf.max(r);
    }
    FitErrors {
        l1,
        l2: l2.sqrt(),
        linf,
    }
}

/// Residual norms of a weighted quasi-arithmetic-mean model.
pub fn wqam_fit_errors(data: &FitData, phi: Generator, w: &[f64]) -> Result<FitErrors> {
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    let mut linf = 0.0f64;
    for (col, &yj) in data.columns().iter().zip(data.y()) {
        let mut acc = 0.0;
        for (&xi, &wi) in col.iter().zip(w) {
            acc += wi * phi.phi(xi)?;
        }
        let r = (phi.phi_inv(acc)? - yj).abs();
        l1 += r;
        l2 += r * r;
        linf = linf.max(r);
    }
    Ok(FitErrors {
        l1,
        l2: l2.sqrt(),
        linf,
    })
}

fn weights_from(x: &[f64], n: usize) -> Result<WeightVector> {
    // solver output may carry tiny negative noise; clip and renormalize
    let w: Vec<f64> = x[..n].iter().map(|&v| v.max(0.0)).collect();
    WeightVector::normalized(&w)
}

/// Least-squares weights: the quadratic program over the simplex.
///
/// ```
/// use fusekit::fitting::{fit_wam_lse, FitData};
///
/// // targets generated exactly by the weights (0.25, 0.75)
/// let data = FitData::new(
///     vec![vec![0.0, 1.0], vec![1.0, 0.0], vec![0.4, 0.8]],
///     vec![0.75, 0.25, 0.7],
/// )
/// .unwrap();
/// let w = fit_wam_lse(&data).unwrap();
/// assert!((w.weights()[0] - 0.25).abs() < 1e-6);
/// assert!((w.weights()[1] - 0.75).abs() < 1e-6);
/// ```
pub fn fit_wam_lse(data: &FitData) -> Result<WeightVector> {
    let n = data.n();
    let d = data.xxt();
    let c: Vec<f64> = data.xyt().iter().map(|v| -v).collect();
    let p = QpProblem::new(d, c, vec![vec![1.0; n]], vec![1.0], vec![Relation::Eq]);
    let sol = qp_solve(&p)?;
    if sol.status != Status::Optimal {
        return Err(Error::Solver(format!(
            "LSE fit ended with {:?}",
            sol.status
        )));
    }
    weights_from(&sol.x, n)
}

/// Least-absolute-deviation weights via the split-residual linear program.
pub fn fit_wam_lad(data: &FitData) -> Result<WeightVector> {
    let (n, m) = (data.n(), data.m());
    // variables: w (n), r+ (m), r- (m)
    let total = n + 2 * m;
    let mut rows = Vec::with_capacity(m + 1);
    let mut rhs = Vec::with_capacity(m + 1);
    for (j, col) in data.columns().iter().enumerate() {
        let mut row = vec![0.0; total];
        row[..n].copy_from_slice(col);
        row[n + j] = -1.0;
        row[n + m + j] = 1.0;
        rows.push(row);
        rhs.push(data.y()[j]);
    }
    let mut sum_row = vec![0.0; total];
    sum_row[..n].fill(1.0);
    rows.push(sum_row);
    rhs.push(1.0);
    let mut c = vec![0.0; total];
    c[n..].fill(1.0);
    let p = LpProblem::new(c, rows, rhs, vec![Relation::Eq; m + 1]);
    let sol = lp_solve(&p)?;
    if sol.status != Status::Optimal {
        return Err(Error::Solver(format!(
            "LAD fit ended with {:?}",
            sol.status
        )));
    }
    // simplex vertices never carry both halves of a residual split
    for j in 0..m {
        debug_assert!(sol.x[n + j].min(sol.x[n + m + j]) <= 1e-7);
    }
    weights_from(&sol.x, n)
}

/// Least-maximum-deviation (Chebyshev) weights via a linear program.
pub fn fit_wam_lmd(data: &FitData) -> Result<WeightVector> {
    let (n, m) = (data.n(), data.m());
    // variables: w (n), t (1)
    let total = n + 1;
    let mut rows = Vec::with_capacity(2 * m + 1);
    let mut rhs = Vec::with_capacity(2 * m + 1);
    let mut rels = Vec::with_capacity(2 * m + 1);
    for (j, col) in data.columns().iter().enumerate() {
        let mut row = vec![0.0; total];
        row[..n].copy_from_slice(col);
        row[n] = -1.0;
        rows.push(row);
        rhs.push(data.y()[j]);
        rels.push(Relation::Le);
        let mut row = vec![0.0; total];
        row[..n].copy_from_slice(col);
        row[n] = 1.0;
        rows.push(row);
        rhs.push(data.y()[j]);
        rels.push(Relation::Ge);
    }
    let mut sum_row = vec![0.0; total];
    sum_row[..n].fill(1.0);
    rows.push(sum_row);
    rhs.push(1.0);
    rels.push(Relation::Eq);
    let mut c = vec![0.0; total];
    c[n] = 1.0;
    let p = LpProblem::new(c, rows, rhs, rels);
    let sol = lp_solve(&p)?;
    if sol.status != Status::Optimal {
        return Err(Error::Solver(format!(
            "LMD fit ended with {:?}",
            sol.status
        )));
    }
    weights_from(&sol.x, n)
}

/// Penalty type for rank-preserving fits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RankCriterion {
    /// LAD fit plus `p * sum |z_i|` on ranking violations.
    LadL1Penalty(f64),
    /// LSE fit plus `p * sum z_i^2` on ranking violations.
    LseL2Penalty(f64),
}

/// Kendall tau correlation by the O(m^2) definition. Differences below a
/// relative 1e-9 count as ties, so vertices that put consecutive fitted
/// values exactly on a ranking constraint are scored identically regardless
/// of last-bit solver noise.
pub fn kendall_tau(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let m = a.len();
    if m < 2 {
        return Err(Error::InvalidParameter(
            "kendall tau needs >= 2 points".into(),
        ));
    }
    let sgn = |d: f64, x: f64, y: f64| -> f64 {
        if d.abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0) {
            0.0
        } else {
            d.signum()
        }
    };
    let mut s = 0i64;
    for i in 0..m {
        for j in i + 1..m {
            let x = sgn(a[i] - a[j], a[i], a[j]);
            let y = sgn(b[i] - b[j], b[i], b[j]);
            s += (x * y) as i64;
        }
    }
    Ok(s as f64 / (m * (m - 1) / 2) as f64)
}

/// Result of a rank-preserving fit.
#[derive(Debug, Clone)]
pub struct RankFit {
    pub weights: WeightVector,
    pub tau: f64,
    pub errors: FitErrors,
}

/// Weight fitting with a penalty on output-ranking violations.
pub fn fit_wam_rank(data: &FitData, criterion: RankCriterion) -> Result<RankFit> {
    let (n, m) = (data.n(), data.m());
    if m < 2 {
        return Err(Error::InvalidParameter(
            "rank fit needs >= 2 exemplars".into(),
        ));
    }
    // permutation ordering the targets nondecreasingly
    let sigma = crate::order::ordering_permutation(data.y());
    // difference columns x^{(sigma(j+1))} - x^{(sigma(j))}
    let diffs: Vec<Vec<f64>> = (0..m - 1)
        .map(|j| {
            let hi = &data.columns()[sigma[j + 1]];
            let lo = &data.columns()[sigma[j]];
            hi.iter().zip(lo).map(|(a, b)| a - b).collect()
        })
        .collect();

    let weights = match criterion {
        RankCriterion::LadL1Penalty(pen) => {
            if pen <= 0.0 {
                return Err(Error::InvalidParameter("penalty must be positive".into()));
            }
            // variables: w (n), r+ (m), r- (m), q (m-1)
            let total = n + 2 * m + (m - 1);
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            let mut rels = Vec::new();
            for (j, col) in data.columns().iter().enumerate() {
                let mut row = vec![0.0; total];
                row[..n].copy_from_slice(col);
                row[n + j] = -1.0;
                row[n + m + j] = 1.0;
                rows.push(row);
                rhs.push(data.y()[j]);
                rels.push(Relation::Eq);
            }
            let mut sum_row = vec![0.0; total];
            sum_row[..n].fill(1.0);
            rows.push(sum_row);
            rhs.push(1.0);
            rels.push(Relation::Eq);
            for (j, diff) in diffs.iter().enumerate() {
                let mut row = vec![0.0; total];
                row[..n].copy_from_slice(diff);
                row[n + 2 * m + j] = 1.0;
                rows.push(row);
                rhs.push(0.0);
                rels.push(Relation::Ge);
            }
            let mut c = vec![0.0; total];
            c[n..n + 2 * m].fill(1.0);
            c[n + 2 * m..].fill(pen);
            let p = LpProblem::new(c, rows, rhs, rels);
            let sol = lp_solve(&p)?;
            if sol.status != Status::Optimal {
                return Err(Error::Solver(format!(
                    "rank LAD fit ended with {:?}",
                    sol.status
                )));
            }
            weights_from(&sol.x, n)?
        }
        RankCriterion::LseL2Penalty(pen) => {
            if pen <= 0.0 {
                return Err(Error::InvalidParameter("penalty must be positive".into()));
            }
            // variables: w (n), q (m-1); block-diagonal objective matrix
            let total = n + (m - 1);
            let mut d = vec![vec![0.0; total]; total];
            let xxt = data.xxt();
            for i in 0..n {
                d[i][..n].copy_from_slice(&xxt[i]);
            }
            for j in 0..m - 1 {
                d[n + j][n + j] = pen;
            }
            let mut c = vec![0.0; total];
            for (i, v) in data.xyt().iter().enumerate() {
                c[i] = -v;
            }
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            let mut rels = Vec::new();
            let mut sum_row = vec![0.0; total];
            sum_row[..n].fill(1.0);
            rows.push(sum_row);
            rhs.push(1.0);
            rels.push(Relation::Eq);
            for (j, diff) in diffs.iter().enumerate() {
                let mut row = vec![0.0; total];
                row[..n].copy_from_slice(diff);
                row[n + j] = 1.0;
                rows.push(row);
                rhs.push(0.0);
                rels.push(Relation::Ge);
            }
            let p = QpProblem::new(d, c, rows, rhs, rels);
            let sol = qp_solve(&p)?;
            if sol.status != Status::Optimal {
                return Err(Error::Solver(format!(
                    "rank LSE fit ended with {:?}",
                    sol.status
                )));
            }
            weights_from(&sol.x, n)?
        }
    };
    let pred = data.predictions(weights.weights());
    let tau = kendall_tau(data.y(), &pred)?;
    let errors = fit_errors(data, weights.weights());
    Ok(RankFit {
        weights,
        tau,
        errors,
    })
}

/// Ridge-style regularized least squares: `D = XX' + lambda I`.
pub fn fit_wam_regularized(data: &FitData, lambda: f64) -> Result<WeightVector> {
    let n = data.n();
    let mut d = data.xxt();
    for (i, row) in d.iter_mut().enumerate() {
        row[i] += lambda;
    }
    let c: Vec<f64> = data.xyt().iter().map(|v| -v).collect();
    let p = QpProblem::new(d, c, vec![vec![1.0; n]], vec![1.0], vec![Relation::Eq]);
    let sol = qp_solve(&p)?; // non-PSD matrices are rejected inside
    if sol.status != Status::Optimal {
        return Err(Error::Solver(format!(
            "regularized fit ended with {:?}",
            sol.status
        )));
    }
    weights_from(&sol.x, n)
}

fn softmax(lambda: &[f64]) -> Vec<f64> {
    let m = lambda.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = lambda.iter().map(|l| (l - m).exp()).collect();
    let s: f64 = e.iter().sum();
    e.iter().map(|v| v / s).collect()
}

/// The reparametrized WQAM goodness-of-fit objective and its gradient.
///
/// With `w = softmax(lambda)` and `Z_j = w' phi(x^{(j)})`, the gradient of
/// `sum_j rho(phi_inv(Z_j) - y_j)` in `lambda_k` is
/// `w_k * sum_j rho'(e_j) * phi_inv'(Z_j) * (phi(x_k^{(j)}) - Z_j)`.
/// `eps = None` selects the squared error, `Some(eps)` the smoothed
/// absolute error.
pub struct WqamObjective {
    phi_x: Vec<Vec<f64>>, // phi applied to each exemplar column
    y: Vec<f64>,
    phi: Generator,
}

impl WqamObjective {
    pub fn new(data: &FitData, phi: Generator) -> Result<Self> {
        let phi_x = data
            .columns()
            .iter()
            .map(|c| c.iter().map(|&v| phi.phi(v)).collect::<Result<Vec<f64>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(WqamObjective {
            phi_x,
            y: data.y().to_vec(),
            phi,
        })
    }

    pub fn value(&self, lambda: &[f64], eps: Option<f64>) -> f64 {
        let w = softmax(lambda);
        let mut total = 0.0;
        for (col, &yj) in self.phi_x.iter().zip(&self.y) {
            let z: f64 = col.iter().zip(&w).map(|(a, b)| a * b).sum();
            let Ok(pred) = self.phi.phi_inv(z) else {
                return f64::INFINITY;
            };
            let e = pred - yj;
            total += match eps {
                None => e * e,
                Some(eps) => (e * e + eps * eps).sqrt(),
            };
        }
        total
    }

    pub fn gradient(&self, lambda: &[f64], eps: Option<f64>) -> Vec<f64> {
        let w = softmax(lambda);
        let n = w.len();
        let mut g = vec![0.0; n];
        for (col, &yj) in self.phi_x.iter().zip(&self.y) {
            let z: f64 = col.iter().zip(&w).map(|(a, b)| a * b).sum();
            let (pred, dinv) = match (self.phi.phi_inv(z), self.phi.phi_inv_prime(z)) {
                (Ok(p), Ok(d)) => (p, d),
                _ => return vec![f64::NAN; n],
            };
            let e = pred - yj;
            let rho_prime = match eps {
                None => 2.0 * e,
                Some(eps) => e / (e * e + eps * eps).sqrt(),
            };
            for k in 0..n {
                g[k] += w[k] * rho_prime * dinv * (col[k] - z);
            }
        }
        g
    }
}

/// Gradient-based least-squares fit of WQAM weights via the softmax
/// reparametrization.
pub fn fit_wqam_lse(data: &FitData, phi: Generator) -> Result<WeightVector> {
    fit_wqam_impl(data, phi, None, 1, 0)
}

/// Linearized variant: least-squares fit on the generator-transformed data.
pub fn fit_wqam_lse_linearized(data: &FitData, phi: Generator) -> Result<WeightVector> {
    fit_wam_lse(&data.transformed(phi)?)
}

/// Smoothed least-absolute-deviation fit of WQAM weights with multi-start.
pub fn fit_wqam_lad(
    data: &FitData,
    phi: Generator,
    epsilon: f64,
    restarts: usize,
    seed: u64,
) -> Result<WeightVector> {
    if epsilon <= 0.0 {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    fit_wqam_impl(data, phi, Some(epsilon), restarts.max(1), seed)
}

fn fit_wqam_impl(
    data: &FitData,
    phi: Generator,
    eps: Option<f64>,
    restarts: usize,
    seed: u64,
) -> Result<WeightVector> {
    let obj = WqamObjective::new(data, phi)?;
    let n = data.n();
    let mut rng = rng_from_seed(seed);
    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    for _ in 0..restarts {
        let w0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let s: f64 = w0.iter().sum();
        let lambda0: Vec<f64> = w0.iter().map(|v| (v / s).ln()).collect();
        let value = |l: &[f64]| obj.value(l, eps);
        let grad = |l: &[f64]| obj.gradient(l, eps);
        let res = qn_minimize(
            value,
            Some(&grad),
            &lambda0,
            QnOptions {
                reltol: 1e-16,
                gtol: 1e-10,
                max_iter: 10_000,
            },
        )?;
        let better = match &best {
            None => true,
            Some((bv, _, _)) => res.value < *bv,
        };
        if better {
            best = Some((res.value, softmax(&res.x), res.converged));
        }
    }
    let (_, w, converged) = best.unwrap();
    if !converged {
        return Err(Error::NoConvergence(
            "all restarts hit the iteration limit".into(),
        ));
    }
    WeightVector::normalized(&w)
}

/// Bi-level power-mean fit: outer scalar search over the exponent, inner
/// gradient-based least-squares weight fit.
pub fn fit_powmean(data: &FitData, p_min: f64, p_max: f64) -> Result<(f64, WeightVector)> {
    if !(0.0 < p_min && p_min < p_max) {
        return Err(Error::InvalidParameter("need 0 < p_min < p_max".into()));
    }
    if data.columns().iter().flatten().any(|&v| v < 0.0) {
        return Err(Error::Domain("power-mean fit needs x >= 0".into()));
    }
    let inner_error = |p: f64| -> f64 {
        let phi = Generator::Power(p);
        match fit_wqam_lse(data, phi) {
            Ok(w) => match wqam_fit_errors(data, phi, w.weights()) {
                Ok(e) => e.l2 * e.l2,
                Err(_) => f64::INFINITY,
            },
            Err(_) => f64::INFINITY,
        }
    };
    let (p_star, _) = brent_minimize(inner_error, p_min, p_max, 1e-6)?;
    let w = fit_wqam_lse(data, Generator::Power(p_star))?;
    Ok((p_star, w))
}
