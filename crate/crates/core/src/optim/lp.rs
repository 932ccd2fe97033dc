//! Dense two-phase primal simplex with Bland's anti-cycling rule.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
    MaxIterations,
}

/// `minimize c'x + c0  s.t.  A x {<=,=,>=} b,  l <= x <= u`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub c: Vec<f64>,
    pub c0: f64,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub relations: Vec<Relation>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LpProblem {
    /// All variables bounded below by zero, no upper bounds.
    pub fn new(c: Vec<f64>, a: Vec<Vec<f64>>, b: Vec<f64>, relations: Vec<Relation>) -> Self {
        let n = c.len();
        LpProblem {
            c,
            c0: 0.0,
            a,
            b,
            relations,
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.c.len();
        let m = self.b.len();
        if self.a.len() != m || self.relations.len() != m {
            return Err(Error::DimensionMismatch("constraint rows".into()));
        }
        if self.a.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("constraint columns".into()));
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::DimensionMismatch("bounds".into()));
        }
        if self.lower.iter().zip(&self.upper).any(|(l, u)| l > u) {
            return Err(Error::InvalidParameter(
                "lower bound above upper bound".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: Status,
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

const PIVOT_TOL: f64 = 1e-10;
const COST_TOL: f64 = 1e-9;

/// How an original variable maps into the standard-form variables.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `x = l + z_k`
    Shifted { k: usize, l: f64 },
    /// `x = u - z_k`
    Flipped { k: usize, u: f64 },
    /// `x = z_p - z_m`
    Split { p: usize, m: usize },
}

struct Standard {
    ncols: usize,
    rows: Vec<Vec<f64>>, // coefficients, equality rows
    rhs: Vec<f64>,
    cost: Vec<f64>,
    cost0: f64,
    maps: Vec<VarMap>,
}

/// Rewrites the problem as `min c~'z  s.t.  E z = b~, z >= 0`.
fn standardize(p: &LpProblem) -> Standard {
    let n = p.c.len();
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0usize;
    let mut extra_rows: Vec<(usize, f64)> = Vec::new(); // z_k <= bound
    for j in 0..n {
        let (l, u) = (p.lower[j], p.upper[j]);
        if l.is_finite() {
            maps.push(VarMap::Shifted { k: ncols, l });
            if u.is_finite() {
                extra_rows.push((ncols, u - l));
            }
            ncols += 1;
        } else if u.is_finite() {
            maps.push(VarMap::Flipped { k: ncols, u });
            ncols += 1;
        } else {
            maps.push(VarMap::Split {
                p: ncols,
                m: ncols + 1,
            });
            ncols += 2;
        }
    }

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    let mut rels: Vec<Relation> = Vec::new();
    for (i, arow) in p.a.iter().enumerate() {
        let mut row = vec![0.0; ncols];
        let mut shift = 0.0;
        for (j, &aij) in arow.iter().enumerate() {
            match maps[j] {
                VarMap::Shifted { k, l } => {
                    row[k] += aij;
                    shift += aij * l;
                }
                VarMap::Flipped { k, u } => {
                    row[k] -= aij;
                    shift += aij * u;
                }
                VarMap::Split { p: kp, m: km } => {
                    row[kp] += aij;
                    row[km] -= aij;
                }
            }
        }
        rows.push(row);
        rhs.push(p.b[i] - shift);
        rels.push(p.relations[i]);
    }
    for (k, bound) in extra_rows {
        let mut row = vec![0.0; ncols];
        row[k] = 1.0;
        rows.push(row);
        rhs.push(bound);
        rels.push(Relation::Le);
    }

    // slack variables for inequalities
    let m = rows.len();
    let mut slack_cols = 0usize;
    for rel in &rels {
        if *rel != Relation::Eq {
            slack_cols += 1;
        }
    }
    let total = ncols + slack_cols;
    let mut s = 0usize;
    for (i, rel) in rels.iter().enumerate() {
        rows[i].resize(total, 0.0);
        match rel {
            Relation::Le => {
                rows[i][ncols + s] = 1.0;
                s += 1;
            }
            Relation::Ge => {
                rows[i][ncols + s] = -1.0;
                s += 1;
            }
            Relation::Eq => {}
        }
    }
    // make rhs nonnegative
    for i in 0..m {
        if rhs[i] < 0.0 {
            rhs[i] = -rhs[i];
            for v in rows[i].iter_mut() {
                *v = -*v;
            }
        }
    }

    let mut cost = vec![0.0; total];
    let mut cost0 = p.c0;
    for (j, &cj) in p.c.iter().enumerate() {
        match maps[j] {
            VarMap::Shifted { k, l } => {
                cost[k] += cj;
                cost0 += cj * l;
            }
            VarMap::Flipped { k, u } => {
                cost[k] -= cj;
                cost0 += cj * u;
            }
            VarMap::Split { p: kp, m: km } => {
                cost[kp] += cj;
                cost[km] -= cj;
            }
        }
    }

    Standard {
        ncols: total,
        rows,
        rhs,
        cost,
        cost0,
        maps,
    }
}

struct Tableau {
    m: usize,
    t: Vec<Vec<f64>>, // m rows of n_total + 1 entries (rhs last)
    basis: Vec<usize>,
    n_total: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v /= piv;
        }
        for r in 0..self.m {
            if r == row {
                continue;
            }
            let f = self.t[r][col];
            if f == 0.0 {
                continue;
            }
            for c in 0..=self.n_total {
                let delta = f * self.t[row][c];
                self.t[r][c] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Primal simplex with Bland's rule; only columns below `col_limit` may
    /// enter the basis.
    fn run(&mut self, cost: &[f64], col_limit: usize, max_iter: usize) -> (Status, usize) {
        let mut iters = 0usize;
        loop {
            if iters >= max_iter {
                return (Status::MaxIterations, iters);
            }
            // reduced costs: c_j - c_B' B^{-1} A_j
            let mut entering = None;
            for j in 0..col_limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut red = cost[j];
                for (r, &bv) in self.basis.iter().enumerate() {
                    red -= cost[bv] * self.t[r][j];
                }
                if red < -COST_TOL {
                    entering = Some(j); // Bland: first (smallest) index
                    break;
                }
            }
            let Some(col) = entering else {
                return (Status::Optimal, iters);
            };
            // ratio test, ties by smallest basic variable index
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.m {
                let a = self.t[r][col];
                if a > PIVOT_TOL {
                    let ratio = self.t[r][self.n_total] / a;
                    match leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - PIVOT_TOL
                                || ((ratio - lratio).abs() <= PIVOT_TOL
                                    && self.basis[r] < self.basis[lr])
                            {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let Some((row, _)) = leave else {
                return (Status::Unbounded, iters);
            };
            self.pivot(row, col);
            iters += 1;
        }
    }

    fn objective(&self, cost: &[f64]) -> f64 {
        self.basis
            .iter()
            .enumerate()
            .map(|(r, &bv)| cost[bv] * self.t[r][self.n_total])
            .sum()
    }
}

/// Solves a linear program. Infeasibility and unboundedness are reported via
/// the status field, not as errors.
pub fn lp_solve(p: &LpProblem) -> Result<LpSolution> {
    p.validate()?;
    let std_form = standardize(p);
    let m = std_form.rows.len();
    let n = std_form.ncols;
    let max_iter = 200 * (n + m) + 2000;

    // tableau with artificial variables appended
    let n_total = n + m;
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(n_total + 1);
        row.extend_from_slice(&std_form.rows[i]);
        row.extend(std::iter::repeat_n(0.0, m));
        row.push(std_form.rhs[i]);
        row[n + i] = 1.0;
        t.push(row);
    }
    let basis: Vec<usize> = (n..n + m).collect();
    let mut tab = Tableau {
        m,
        t,
        basis,
        n_total,
    };

    // phase 1: drive artificials to zero
    let mut phase1_cost = vec![0.0; n_total];
    for j in n..n_total {
        phase1_cost[j] = 1.0;
    }
    let (st, it1) = tab.run(&phase1_cost, n_total, max_iter);
    if st == Status::MaxIterations {
        return Ok(LpSolution {
            status: st,
            x: vec![],
            value: f64::NAN,
            iterations: it1,
        });
    }
    let phase1_obj = tab.objective(&phase1_cost);
    if phase1_obj > 1e-7 {
        return Ok(LpSolution {
            status: Status::Infeasible,
            x: vec![],
            value: f64::NAN,
            iterations: it1,
        });
    }
    // pivot remaining artificials out of the basis where possible
    for r in 0..m {
        if tab.basis[r] >= n {
            let col = (0..n).find(|&j| tab.t[r][j].abs() > PIVOT_TOL);
            if let Some(col) = col {
                tab.pivot(r, col);
            }
            // an all-zero row is redundant; its artificial stays basic at 0
        }
    }

    // phase 2: artificial columns may not re-enter the basis
    let mut phase2_cost = vec![0.0; n_total];
    phase2_cost[..n].copy_from_slice(&std_form.cost);
    let (st, it2) = tab.run(&phase2_cost, n, max_iter);
    if st != Status::Optimal {
        return Ok(LpSolution {
            status: st,
            x: vec![],
            value: f64::NAN,
            iterations: it1 + it2,
        });
    }

    // read the standard-form solution
    let mut z = vec![0.0; n];
    for (r, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            z[bv] = tab.t[r][tab.n_total];
        }
    }
    // map back to the original variables
    let mut x = vec![0.0; p.c.len()];
    for (j, map) in std_form.maps.iter().enumerate() {
        x[j] = match *map {
            VarMap::Shifted { k, l } => l + z[k],
            VarMap::Flipped { k, u } => u - z[k],
            VarMap::Split { p: kp, m: km } => z[kp] - z[km],
        };
    }
    let value = std_form.cost0
        + std_form
            .cost
            .iter()
            .zip(&z)
            .map(|(c, zi)| c * zi)
            .sum::<f64>();
    Ok(LpSolution {
        status: Status::Optimal,
        x,
        value,
        iterations: it1 + it2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::rng_from_seed;
    use rand::Rng;

    #[test]
    fn tiny_lp() {
        // min x1 + x2 s.t. x1 + x2 >= 1, x >= 0
        let p = LpProblem::new(
            vec![1.0, 1.0],
            vec![vec![1.0, 1.0]],
            vec![1.0],
            vec![Relation::Ge],
        );
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, Status::Optimal);
        assert!((s.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_lp() {
        // x1 >= 2 and x1 <= 1
        let p = LpProblem::new(
            vec![1.0],
            vec![vec![1.0], vec![1.0]],
            vec![2.0, 1.0],
            vec![Relation::Ge, Relation::Le],
        );
        assert_eq!(lp_solve(&p).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn unbounded_lp() {
        let p = LpProblem::new(vec![-1.0], vec![vec![1.0]], vec![1.0], vec![Relation::Ge]);
        assert_eq!(lp_solve(&p).unwrap().status, Status::Unbounded);
    }

    #[test]
    fn free_and_bounded_variables() {
        // min x + y with -2 <= x <= 5, y free, y >= x - 1 (as row), y <= 4
        let p = LpProblem {
            c: vec![1.0, 1.0],
            c0: 0.5,
            a: vec![vec![-1.0, 1.0], vec![0.0, 1.0]],
            b: vec![-1.0, 4.0],
            relations: vec![Relation::Ge, Relation::Le],
            lower: vec![-2.0, f64::NEG_INFINITY],
            upper: vec![5.0, f64::INFINITY],
        };
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, Status::Optimal);
        // x = -2, y = -3 minimizes
        assert!((s.x[0] + 2.0).abs() < 1e-8);
        assert!((s.x[1] + 3.0).abs() < 1e-8);
        assert!((s.value - (-5.0 + 0.5)).abs() < 1e-8);
    }

    /// Brute-force LP oracle: enumerate all basic solutions of the
    /// inequality system and take the best feasible one.
    fn brute_force_lp(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Option<f64> {
        // constraints: a_i' x <= b_i and x >= 0, dimensions small
        let n = c.len();
        let mut rows: Vec<(Vec<f64>, f64)> = a.iter().cloned().zip(b.iter().cloned()).collect();
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = -1.0;
            rows.push((e, 0.0)); // -x_j <= 0
        }
        let m = rows.len();
        let mut best: Option<f64> = None;
        let idx: Vec<usize> = (0..m).collect();
        // choose n constraints to be tight
        fn combos(idx: &[usize], k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if idx.len() < k {
                return vec![];
            }
            let mut out = Vec::new();
            for (i, &first) in idx.iter().enumerate() {
                for mut rest in combos(&idx[i + 1..], k - 1) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        for combo in combos(&idx, n) {
            let sys: Vec<Vec<f64>> = combo.iter().map(|&i| rows[i].0.clone()).collect();
            let rhs: Vec<f64> = combo.iter().map(|&i| rows[i].1).collect();
            if let Some(x) = crate::optim::linalg::solve_dense(&sys, &rhs, 1e-9) {
                let feasible = rows
                    .iter()
                    .all(|(ai, bi)| crate::optim::linalg::dot(ai, &x) <= bi + 1e-7);
                if feasible {
                    let v = crate::optim::linalg::dot(c, &x);
                    best = Some(match best {
                        None => v,
                        Some(bv) => bv.min(v),
                    });
                }
            }
        }
        best
    }

    #[test]
    fn matches_vertex_enumeration() {
        let mut rng = rng_from_seed(31);
        let mut solved = 0;
        for _ in 0..150 {
            let n = 3;
            let m = rng.gen_range(2..5);
            let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let b: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..2.0)).collect();
            // add a box so the problem is surely bounded
            let mut a2 = a.clone();
            let mut b2 = b.clone();
            for j in 0..n {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                a2.push(e);
                b2.push(10.0);
            }
            let p = LpProblem::new(c.clone(), a2.clone(), b2.clone(), vec![Relation::Le; m + n]);
            let s = lp_solve(&p).unwrap();
            assert_eq!(s.status, Status::Optimal);
            let oracle = brute_force_lp(&c, &a2, &b2).unwrap();
            assert!(
                (s.value - oracle).abs() < 1e-6,
                "simplex {} vs oracle {}",
                s.value,
                oracle
            );
            solved += 1;
        }
        assert_eq!(solved, 150);
    }

    #[test]
    fn constraints_respected_on_optimum() {
        let mut rng = rng_from_seed(37);
        for _ in 0..100 {
            let n = rng.gen_range(2..5);
            let m = rng.gen_range(1..4);
            let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let a: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(0.0..1.0)).collect())
                .collect();
            let b: Vec<f64> = (0..m).map(|_| rng.gen_range(0.5..2.0)).collect();
            let p = LpProblem::new(c, a.clone(), b.clone(), vec![Relation::Ge; m]);
            let s = lp_solve(&p).unwrap();
            if s.status == Status::Optimal {
                for i in 0..m {
                    let lhs = crate::optim::linalg::dot(&a[i], &s.x);
                    assert!(lhs >= b[i] - 1e-9);
                }
                for &xi in &s.x {
                    assert!(xi >= -1e-9);
                }
            }
        }
    }
}
