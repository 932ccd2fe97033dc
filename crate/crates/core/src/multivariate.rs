//! Point-cloud fusion: centroid, componentwise median, the Weiszfeld
//! 1-median, medoid, Euclidean 1-center, data depths, the orthomedian
//! approximation, and random orthogonal matrices.

use crate::error::{Error, Result};
use crate::means::{aggregate, MeanSpec};
use crate::optim::{lp_solve, qp_solve, LpProblem, QpProblem, Relation, Status};
use crate::order::rng_from_seed;
use crate::types::{RealVector, WeightVector};
use rand::Rng;

/// `d x n` matrix whose columns are observations in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    d: usize,
    n: usize,
    /// column-major storage
    data: Vec<f64>,
}

impl PointCloud {
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::EmptyInput);
        }
        let d = columns[0].len();
        if d == 0 {
            return Err(Error::EmptyInput);
        }
        if columns.iter().any(|c| c.len() != d) {
            return Err(Error::DimensionMismatch("ragged point list".into()));
        }
        if columns.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("point coordinate".into()));
        }
        Ok(PointCloud {
            d,
            n: columns.len(),
            data: columns.concat(),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.n).map(move |i| self.point(i))
    }

    /// Row `j` (the j-th coordinate of every observation).
    pub fn coordinate_row(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.data[i * self.d + j]).collect()
    }

    pub fn translated(&self, t: &[f64]) -> Result<PointCloud> {
        if t.len() != self.d {
            return Err(Error::DimensionMismatch("translation vector".into()));
        }
        let cols: Vec<Vec<f64>> = self
            .points()
            .map(|p| p.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        PointCloud::from_columns(&cols)
    }

    pub fn scaled(&self, s: f64) -> PointCloud {
        PointCloud {
            d: self.d,
            n: self.n,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// Applies a `d x d` matrix (row-major) to every point.
    pub fn transformed(&self, a: &[Vec<f64>]) -> Result<PointCloud> {
        if a.len() != self.d || a.iter().any(|r| r.len() != self.d) {
            return Err(Error::DimensionMismatch("transform matrix".into()));
        }
        let cols: Vec<Vec<f64>> = self
            .points()
            .map(|p| {
                a.iter()
                    .map(|row| row.iter().zip(p).map(|(r, x)| r * x).sum())
                    .collect()
            })
            .collect();
        PointCloud::from_columns(&cols)
    }
}

/// Metrics for medoid and related searches.
#[derive(Clone)]
pub enum MetricSpec {
    Euclidean,
    Manhattan,
    Chebyshev,
    /// `p >= 1`
    Minkowski(f64),
    Custom(std::sync::Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for MetricSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricSpec::Euclidean => write!(f, "Euclidean"),
            MetricSpec::Manhattan => write!(f, "Manhattan"),
            MetricSpec::Chebyshev => write!(f, "Chebyshev"),
            MetricSpec::Minkowski(p) => write!(f, "Minkowski({p})"),
            MetricSpec::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl MetricSpec {
    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            MetricSpec::Euclidean => euclidean(a, b),
            MetricSpec::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
            MetricSpec::Chebyshev => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
            MetricSpec::Minkowski(p) => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs().powf(*p))
                .sum::<f64>()
                .powf(1.0 / p),
            MetricSpec::Custom(f) => f(a, b),
        }
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Componentwise (weighted) arithmetic mean.
pub fn centroid(x: &PointCloud, w: Option<&WeightVector>) -> Result<Vec<f64>> {
    if let Some(w) = w {
        if w.len() != x.n() {
            return Err(Error::LengthMismatch(w.len(), x.n()));
        }
    }
    let mut out = vec![0.0; x.d()];
    for (i, p) in x.points().enumerate() {
        let wi = w.map_or(1.0 / x.n() as f64, |w| w.weights()[i]);
        for (o, v) in out.iter_mut().zip(p) {
            *o += wi * v;
        }
    }
    Ok(out)
}

/// Componentwise median.
pub fn cw_median(x: &PointCloud) -> Result<Vec<f64>> {
    (0..x.d())
        .map(|j| aggregate(MeanSpec::Median, &RealVector::new(x.coordinate_row(j))?))
        .collect()
}

#[derive(Debug, Clone)]
pub struct WeiszfeldResult {
    pub point: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

/// Weighted Euclidean 1-median by the Weiszfeld fixed-point iteration,
/// started from the centroid. Landing on a data point triggers an optimality
/// check of that point via the subgradient condition.
pub fn weiszfeld_1median(
    x: &PointCloud,
    w: Option<&WeightVector>,
    eps: f64,
    max_iter: usize,
) -> Result<WeiszfeldResult> {
    if let Some(w) = w {
        if w.len() != x.n() {
            return Err(Error::LengthMismatch(w.len(), x.n()));
        }
    }
    let n = x.n();
    let d = x.d();
    let weight = |i: usize| w.map_or(1.0 / n as f64, |w| w.weights()[i]);
    let mut y = centroid(x, w)?;
    // all points identical: the centroid already is the answer
    if x.points().all(|p| euclidean(p, x.point(0)) == 0.0) {
        return Ok(WeiszfeldResult {
            point: x.point(0).to_vec(),
            converged: true,
            iterations: 0,
        });
    }
    for iter in 0..max_iter {
        // collision with a data point: test its optimality
        if let Some(k) = (0..n).find(|&i| euclidean(x.point(i), &y) <= 1e-12) {
            let mut r = vec![0.0; d];
            for i in 0..n {
                if i == k {
                    continue;
                }
                let dist = euclidean(x.point(i), &y);
                for (rj, (xi, yj)) in r.iter_mut().zip(x.point(i).iter().zip(&y)) {
                    *rj += weight(i) * (xi - yj) / dist;
                }
            }
            let rnorm = r.iter().map(|v| v * v).sum::<f64>().sqrt();
            if rnorm <= weight(k) + 1e-12 {
                // the data point satisfies the subgradient condition
                return Ok(WeiszfeldResult {
                    point: x.point(k).to_vec(),
                    converged: true,
                    iterations: iter,
                });
            }
            // nudge off the data point along the pull direction
            let step = 1e-6 * (1.0 + y.iter().map(|v| v.abs()).fold(0.0, f64::max));
            for (yj, rj) in y.iter_mut().zip(&r) {
                *yj += step * rj / rnorm;
            }
            continue;
        }
        let mut num = vec![0.0; d];
        let mut den = 0.0;
        for i in 0..n {
            let dist = euclidean(x.point(i), &y);
            let c = weight(i) / dist;
            den += c;
            for (nj, xj) in num.iter_mut().zip(x.point(i)) {
                *nj += c * xj;
            }
        }
        let y_new: Vec<f64> = num.iter().map(|v| v / den).collect();
        let delta = euclidean(&y_new, &y);
        y = y_new;
        if delta <= eps {
            return Ok(WeiszfeldResult {
                point: y,
                converged: true,
                iterations: iter + 1,
            });
        }
    }
    Ok(WeiszfeldResult {
        point: y,
        converged: false,
        iterations: max_iter,
    })
}

/// Index of the input point minimizing the total distance to the others;
/// ties go to the smallest index.
pub fn medoid(x: &PointCloud, metric: &MetricSpec) -> usize {
    let mut best = 0usize;
    let mut best_val = f64::INFINITY;
    for i in 0..x.n() {
        let total: f64 = (0..x.n())
            .map(|j| metric.distance(x.point(j), x.point(i)))
            .sum();
        if total < best_val {
            best_val = total;
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// Euclidean 1-center (smallest enclosing ball) via its convex quadratic
/// program over the simplex.
pub fn seb_1center(x: &PointCloud) -> Result<Ball> {
    let n = x.n();
    // gram matrix X'X and its diagonal
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = x.point(i).iter().zip(x.point(j)).map(|(a, b)| a * b).sum();
        }
    }
    // minimize v'(X'X)v - diag(X'X)'v  <=>  0.5 v'(2 X'X)v - diag'v
    let d2: Vec<Vec<f64>> = gram
        .iter()
        .map(|r| r.iter().map(|v| 2.0 * v).collect())
        .collect();
    let c: Vec<f64> = (0..n).map(|i| -gram[i][i]).collect();
    let p = QpProblem::new(d2, c, vec![vec![1.0; n]], vec![1.0], vec![Relation::Eq]);
    let sol = qp_solve(&p)?;
    if sol.status != Status::Optimal {
        return Err(Error::Solver(format!(
            "1-center QP ended with {:?}",
            sol.status
        )));
    }
    let mut center = vec![0.0; x.d()];
    for (i, vi) in sol.x.iter().enumerate() {
        for (cj, xj) in center.iter_mut().zip(x.point(i)) {
            *cj += vi * xj;
        }
    }
    let radius = x
        .points()
        .map(|p| euclidean(p, &center))
        .fold(0.0, f64::max);
    Ok(Ball { center, radius })
}

/// How to evaluate the halfplane location depth.
#[derive(Debug, Clone, Copy)]
pub enum TukeyMode {
    /// Exact in the plane: the minimizing closed halfplane's boundary passes
    /// through the query point and can be rotated onto a data point, so
    /// scanning directions normal to every query-to-point segment (plus
    /// slight rotations resolving boundary ties) suffices.
    Exact2d,
    /// Monte Carlo upper bound for any dimension.
    Mc { samples: usize, seed: u64 },
}

fn halfplane_count(y: &[f64], x: &PointCloud, u: &[f64]) -> usize {
    let uy: f64 = u.iter().zip(y).map(|(a, b)| a * b).sum();
    x.points()
        .filter(|p| {
            let v: f64 = u.iter().zip(*p).map(|(a, b)| a * b).sum();
            v >= uy - 1e-12
        })
        .count()
}

/// Halfplane location depth of `y` with respect to the cloud.
pub fn tukey_depth(y: &[f64], x: &PointCloud, mode: TukeyMode) -> Result<usize> {
    if y.len() != x.d() {
        return Err(Error::DimensionMismatch("query point".into()));
    }
    match mode {
        TukeyMode::Exact2d => {
            if x.d() != 2 {
                return Err(Error::DimensionMismatch("exact mode needs d = 2".into()));
            }
            let mut dirs: Vec<[f64; 2]> = vec![[1.0, 0.0], [0.0, 1.0]];
            let mut push_normals = |dx: f64, dy: f64| {
                let norm = (dx * dx + dy * dy).sqrt();
                if norm <= 1e-300 {
                    return;
                }
                let (nx, ny) = (-dy / norm, dx / norm);
                const EPS: f64 = 1e-9;
                for rot in [-EPS, 0.0, EPS] {
                    let (s, c) = rot.sin_cos();
                    dirs.push([nx * c - ny * s, nx * s + ny * c]);
                }
            };
            for i in 0..x.n() {
                let pi = x.point(i);
                push_normals(pi[0] - y[0], pi[1] - y[1]);
            }
            let mut depth = x.n();
            for u in &dirs {
                depth = depth.min(halfplane_count(y, x, u));
                depth = depth.min(halfplane_count(y, x, &[-u[0], -u[1]]));
            }
            Ok(depth)
        }
        TukeyMode::Mc { samples, seed } => {
            let mut rng = rng_from_seed(seed);
            let d = x.d();
            let mut depth = x.n();
            for _ in 0..samples {
                // random direction from a spherically symmetric sample
                let u: Vec<f64> = (0..d).map(|_| standard_normal(&mut rng)).collect();
                let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm <= 1e-12 {
                    continue;
                }
                let u: Vec<f64> = u.iter().map(|v| v / norm).collect();
                depth = depth.min(halfplane_count(y, x, &u));
                let neg: Vec<f64> = u.iter().map(|v| -v).collect();
                depth = depth.min(halfplane_count(y, x, &neg));
            }
            Ok(depth)
        }
    }
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

#[derive(Debug, Clone)]
pub struct TukeyMedian {
    pub point: Vec<f64>,
    pub depth: usize,
    /// More than one candidate attained the deepest value.
    pub multiple: bool,
    /// Input was collinear; the componentwise median was returned instead.
    pub degenerate: bool,
}

fn dedup_points(x: &PointCloud) -> Vec<Vec<f64>> {
    let mut uniq: Vec<Vec<f64>> = Vec::new();
    for p in x.points() {
        if !uniq.iter().any(|q| q == p) {
            uniq.push(p.to_vec());
        }
    }
    uniq
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Monotone-chain convex hull; returns vertices in counterclockwise order.
pub fn convex_hull_2d(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = points.to_vec();
    pts.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .unwrap()
            .then(a[1].partial_cmp(&b[1]).unwrap())
    });
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Vec<f64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<f64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Area centroid of a polygon given by its vertices in order; falls back to
/// the vertex average for degenerate (zero-area) polygons.
pub fn polygon_centroid(vertices: &[Vec<f64>]) -> Vec<f64> {
    let m = vertices.len();
    if m == 0 {
        return vec![];
    }
    let mut twice_area = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..m {
        let p = &vertices[i];
        let q = &vertices[(i + 1) % m];
        let w = p[0] * q[1] - q[0] * p[1];
        twice_area += w;
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    if twice_area.abs() <= 1e-12 {
        let mut avg = vec![0.0, 0.0];
        for v in vertices {
            avg[0] += v[0] / m as f64;
            avg[1] += v[1] / m as f64;
        }
        return avg;
    }
    vec![cx / (3.0 * twice_area), cy / (3.0 * twice_area)]
}

/// Center of gravity of the deepest halfplane-depth region, approximated by
/// the candidate set of input points and pairwise line intersections.
/// Exactly coincident points are collapsed before the search.
pub fn tukey_median_2d(x: &PointCloud) -> Result<TukeyMedian> {
    if x.d() != 2 {
        return Err(Error::DimensionMismatch("tukey median needs d = 2".into()));
    }
    let uniq = dedup_points(x);
    let cloud = PointCloud::from_columns(&uniq)?;
    let n = cloud.n();
    if n == 1 {
        return Ok(TukeyMedian {
            point: cloud.point(0).to_vec(),
            depth: 1,
            multiple: false,
            degenerate: false,
        });
    }
    // collinearity check
    let collinear = {
        let p0 = cloud.point(0);
        let pd = (1..n).find(|&i| euclidean(cloud.point(i), p0) > 1e-12);
        match pd {
            None => true,
            Some(k) => {
                let pk = cloud.point(k);
                (0..n).all(|i| cross(p0, pk, cloud.point(i)).abs() <= 1e-12)
            }
        }
    };
    if collinear {
        return Ok(TukeyMedian {
            point: cw_median(x)?,
            depth: 1,
            multiple: false,
            degenerate: true,
        });
    }
    // candidates: inputs plus all pairwise line intersections
    let mut candidates: Vec<Vec<f64>> = uniq.clone();
    let mut lines: Vec<(f64, f64, f64)> = Vec::new(); // ax + by = c
    for i in 0..n {
        for j in i + 1..n {
            let p = cloud.point(i);
            let q = cloud.point(j);
            let a = q[1] - p[1];
            let b = p[0] - q[0];
            let c = a * p[0] + b * p[1];
            let norm = (a * a + b * b).sqrt();
            if norm > 1e-12 {
                lines.push((a / norm, b / norm, c / norm));
            }
        }
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a1, b1, c1) = lines[i];
            let (a2, b2, c2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() > 1e-12 {
                candidates.push(vec![(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det]);
            }
        }
    }
    // collapse coincident intersection points before the depth sweep
    candidates.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .unwrap()
            .then(a[1].partial_cmp(&b[1]).unwrap())
    });
    candidates.dedup_by(|a, b| (a[0] - b[0]).abs() <= 1e-12 && (a[1] - b[1]).abs() <= 1e-12);
    let mut best_depth = 0usize;
    let mut best: Vec<Vec<f64>> = Vec::new();
    for cand in &candidates {
        let depth = tukey_depth(cand, &cloud, TukeyMode::Exact2d)?;
        if depth > best_depth {
            best_depth = depth;
            best.clear();
        }
        if depth == best_depth && !best.iter().any(|b| euclidean(b, cand) <= 1e-12) {
            best.push(cand.clone());
        }
    }
    let hull = convex_hull_2d(&best);
    let point = if hull.len() == 1 {
        hull[0].clone()
    } else {
        polygon_centroid(&hull)
    };
    Ok(TukeyMedian {
        point,
        depth: best_depth,
        multiple: best.len() > 1,
        degenerate: false,
    })
}

/// Fraction of closed triangles over input triples containing `y` (d = 2).
pub fn liu_depth(y: &[f64], x: &PointCloud) -> Result<f64> {
    if x.d() != 2 || y.len() != 2 {
        return Err(Error::DimensionMismatch(
            "simplicial depth needs d = 2".into(),
        ));
    }
    let n = x.n();
    if n < 3 {
        return Err(Error::InvalidParameter(
            "simplicial depth needs n >= 3".into(),
        ));
    }
    let mut contained = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if triangle_contains(x.point(i), x.point(j), x.point(k), y) {
                    contained += 1;
                }
            }
        }
    }
    let total = (n * (n - 1) * (n - 2) / 6) as f64;
    Ok(contained as f64 / total)
}

/// Closed-triangle membership; degenerate triangles accept points on the
/// segment.
fn triangle_contains(a: &[f64], b: &[f64], c: &[f64], y: &[f64]) -> bool {
    let d1 = cross(a, b, y);
    let d2 = cross(b, c, y);
    let d3 = cross(c, a, y);
    let tol = 1e-12;
    let area2 = cross(a, b, c).abs();
    if area2 <= tol {
        // degenerate: y must lie on the segment spanned by the triple
        let on_seg = |p: &[f64], q: &[f64]| -> bool {
            cross(p, q, y).abs() <= tol
                && y[0] >= p[0].min(q[0]) - tol
                && y[0] <= p[0].max(q[0]) + tol
                && y[1] >= p[1].min(q[1]) - tol
                && y[1] <= p[1].max(q[1]) + tol
        };
        return on_seg(a, b) || on_seg(b, c) || on_seg(a, c);
    }
    let has_neg = d1 < -tol || d2 < -tol || d3 < -tol;
    let has_pos = d1 > tol || d2 > tol || d3 > tol;
    !(has_neg && has_pos)
}

/// Simplex-volume depth (d = 2): normalized reciprocal of the total triangle
/// area spanned with the input pairs.
pub fn oja_depth(y: &[f64], x: &PointCloud) -> Result<f64> {
    if x.d() != 2 || y.len() != 2 {
        return Err(Error::DimensionMismatch("oja depth needs d = 2".into()));
    }
    let n = x.n();
    if n < 2 {
        return Err(Error::InvalidParameter("oja depth needs n >= 2".into()));
    }
    let sum = oja_area_sum(y, x);
    let pairs = (n * (n - 1) / 2) as f64;
    Ok((1.0 / pairs) * (1.0 / (1.0 + sum)))
}

/// Total area of triangles `(y, x_i, x_j)` over all pairs.
pub fn oja_area_sum(y: &[f64], x: &PointCloud) -> f64 {
    let n = x.n();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += 0.5 * cross(y, x.point(i), x.point(j)).abs();
        }
    }
    sum
}

/// Random orthogonal matrix, Haar-uniform, built from a random rotation or
/// reflection of the plane extended by Householder steps.
pub fn rortho(d: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    if d == 1 {
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        return Ok(vec![vec![sign]]);
    }
    let mut a = vec![vec![0.0; d]; d];
    let theta: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    let b = if rng.gen::<f64>() < 0.5 { 1.0 } else { -1.0 };
    a[0][0] = theta.cos();
    a[0][1] = theta.sin();
    a[1][0] = -b * theta.sin();
    a[1][1] = b * theta.cos();
    let mut x = vec![0.0; d];
    for i in 3..=d {
        // random unit vector on the i-sphere
        let mut xnorm = 0.0;
        for xj in x.iter_mut().take(i) {
            *xj = standard_normal(&mut rng);
            xnorm += *xj * *xj;
        }
        xnorm = xnorm.sqrt();
        x[0] = 1.0 - x[0] / xnorm;
        let mut xnorm2 = x[0] * x[0];
        for xj in x.iter_mut().take(i).skip(1) {
            *xj = -*xj / xnorm;
            xnorm2 += *xj * *xj;
        }
        xnorm2 = xnorm2.sqrt();
        for xj in x.iter_mut().take(i) {
            *xj /= xnorm2;
        }
        // embed the previous block at (1.., 1..) and apply I - 2xx'
        for k in (1..i).rev() {
            for j in (1..i).rev() {
                a[j][k] = a[j - 1][k - 1];
            }
        }
        for j in 1..i {
            a[0][j] = 0.0;
            a[j][0] = 0.0;
        }
        a[0][0] = 1.0;
        for k in 0..i {
            let mut x2 = 0.0;
            for (j, xj) in x.iter().enumerate().take(i) {
                x2 += xj * a[j][k];
            }
            for (j, xj) in x.iter().enumerate().take(i) {
                a[j][k] -= 2.0 * xj * x2;
            }
        }
    }
    Ok(a)
}

/// `max |(A A' - I)_{ij}|`.
pub fn orthogonality_residual(a: &[Vec<f64>]) -> f64 {
    let d = a.len();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let mut dot = 0.0;
            for k in 0..d {
                dot += a[i][k] * a[j][k];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}

/// Orthogonal-equivariant median approximation in the plane: project onto
/// `directions` equally spaced unit vectors, take univariate medians, and
/// average the back-projections (scaled by the dimension).
pub fn orthomedian_2d(x: &PointCloud, directions: usize) -> Result<Vec<f64>> {
    if x.d() != 2 {
        return Err(Error::DimensionMismatch("orthomedian needs d = 2".into()));
    }
    if directions < 4 {
        return Err(Error::InvalidParameter("need at least 4 directions".into()));
    }
    let mut acc = [0.0; 2];
    for k in 0..directions {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / directions as f64;
        let u = [phi.cos(), phi.sin()];
        let projections: Vec<f64> = x.points().map(|p| u[0] * p[0] + u[1] * p[1]).collect();
        let med = aggregate(MeanSpec::Median, &RealVector::new(projections)?)?;
        acc[0] += med * u[0];
        acc[1] += med * u[1];
    }
    // d * componentwise mean with d = 2
    Ok(vec![
        2.0 * acc[0] / directions as f64,
        2.0 * acc[1] / directions as f64,
    ])
}

/// Membership of `y` in the convex hull of the cloud, decided by LP
/// feasibility of the convex-combination system.
pub fn point_in_hull(y: &[f64], x: &PointCloud) -> Result<bool> {
    if y.len() != x.d() {
        return Err(Error::DimensionMismatch("query point".into()));
    }
    let n = x.n();
    let d = x.d();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    let mut rhs = Vec::with_capacity(d + 1);
    for j in 0..d {
        rows.push(x.coordinate_row(j));
        rhs.push(y[j]);
    }
    rows.push(vec![1.0; n]);
    rhs.push(1.0);
    let p = LpProblem::new(vec![0.0; n], rows, rhs, vec![Relation::Eq; d + 1]);
    let sol = lp_solve(&p)?;
    Ok(sol.status == Status::Optimal)
}
