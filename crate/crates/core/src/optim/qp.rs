//! Convex quadratic programming by a primal active-set method seeded from an
//! LP feasibility phase. Handles positive semidefinite objectives.

use super::linalg::{dot, is_psd, mat_vec, solve_dense};
use super::lp::{lp_solve, LpProblem, Relation, Status};
use crate::error::{Error, Result};

/// `minimize 0.5 x'Dx + c'x + c0  s.t.  A x {<=,=,>=} b,  l <= x <= u`.
#[derive(Debug, Clone)]
pub struct QpProblem {
    pub d: Vec<Vec<f64>>,
    pub c: Vec<f64>,
    pub c0: f64,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub relations: Vec<Relation>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl QpProblem {
    pub fn new(
        d: Vec<Vec<f64>>,
        c: Vec<f64>,
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
        relations: Vec<Relation>,
    ) -> Self {
        let n = c.len();
        QpProblem {
            d,
            c,
            c0: 0.0,
            a,
            b,
            relations,
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    /// Variables unrestricted in sign.
    pub fn new_free(
        d: Vec<Vec<f64>>,
        c: Vec<f64>,
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
        relations: Vec<Relation>,
    ) -> Self {
        let n = c.len();
        QpProblem {
            d,
            c,
            c0: 0.0,
            a,
            b,
            relations,
            lower: vec![f64::NEG_INFINITY; n],
            upper: vec![f64::INFINITY; n],
        }
    }
}

#[derive(Debug, Clone)]
pub struct QpSolution {
    pub status: Status,
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    /// Lagrange multipliers of the inequality constraints active at the
    /// solution, as (constraint index, multiplier) pairs. Constraint indices
    /// enumerate rows first, then lower bounds, then upper bounds.
    pub active_multipliers: Vec<(usize, f64)>,
}

/// Equality/inequality feasibility tolerance of returned solutions.
pub const FEAS_TOL: f64 = 1e-9;
/// KKT optimality tolerance.
pub const OPT_TOL: f64 = 1e-7;

/// Internal uniform constraint view: equalities `a'x = b` and inequalities
/// `a'x >= b`.
struct Constraints {
    eq: Vec<(Vec<f64>, f64)>,
    ineq: Vec<(Vec<f64>, f64)>,
}

fn gather(p: &QpProblem) -> Result<Constraints> {
    let n = p.c.len();
    if p.d.len() != n || p.d.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("objective matrix".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if (p.d[i][j] - p.d[j][i]).abs() > 1e-10 {
                return Err(Error::InvalidParameter("D must be symmetric".into()));
            }
        }
    }
    if !is_psd(&p.d, 1e-8) {
        return Err(Error::InvalidParameter(
            "D must be positive semidefinite".into(),
        ));
    }
    let mut eq = Vec::new();
    let mut ineq = Vec::new();
    for ((row, &bi), rel) in p.a.iter().zip(&p.b).zip(&p.relations) {
        if row.len() != n {
            return Err(Error::DimensionMismatch("constraint row".into()));
        }
        match rel {
            Relation::Eq => eq.push((row.clone(), bi)),
            Relation::Ge => ineq.push((row.clone(), bi)),
            Relation::Le => {
                ineq.push((row.iter().map(|v| -v).collect(), -bi));
            }
        }
    }
    for j in 0..n {
        if p.lower[j].is_finite() {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            ineq.push((e, p.lower[j]));
        }
        if p.upper[j].is_finite() {
            let mut e = vec![0.0; n];
            e[j] = -1.0;
            ineq.push((e, -p.upper[j]));
        }
    }
    Ok(Constraints { eq, ineq })
}

/// Finds any feasible point via the simplex phase-1 machinery.
fn feasible_start(p: &QpProblem) -> Result<Option<Vec<f64>>> {
    let lp = LpProblem {
        c: vec![0.0; p.c.len()],
        c0: 0.0,
        a: p.a.clone(),
        b: p.b.clone(),
        relations: p.relations.clone(),
        lower: p.lower.clone(),
        upper: p.upper.clone(),
    };
    let sol = lp_solve(&lp)?;
    Ok(match sol.status {
        Status::Optimal => Some(sol.x),
        _ => None,
    })
}

/// Solves the equality-constrained subproblem
/// `min 0.5 p'Dp + g'p  s.t.  A_W p = 0` via its KKT system, regularizing a
/// semidefinite D just enough to make the system solvable.
fn solve_eqp(d: &[Vec<f64>], g: &[f64], rows: &[&Vec<f64>]) -> Option<(Vec<f64>, Vec<f64>)> {
    let n = g.len();
    let k = rows.len();
    let dim = n + k;
    let scale = d
        .iter()
        .enumerate()
        .map(|(i, r)| r[i].abs())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let mut delta = 0.0;
    for _attempt in 0..4 {
        let mut kkt = vec![vec![0.0; dim]; dim];
        for i in 0..n {
            for j in 0..n {
                kkt[i][j] = d[i][j];
            }
            kkt[i][i] += delta;
        }
        for (r, row) in rows.iter().enumerate() {
            for j in 0..n {
                kkt[j][n + r] = row[j];
                kkt[n + r][j] = row[j];
            }
        }
        let mut rhs = vec![0.0; dim];
        for i in 0..n {
            rhs[i] = -g[i];
        }
        if let Some(sol) = solve_dense(&kkt, &rhs, 1e-12 * scale.max(1.0)) {
            let p = sol[..n].to_vec();
            let mu = sol[n..].to_vec();
            return Some((p, mu));
        }
        delta = if delta == 0.0 {
            1e-10 * scale
        } else {
            delta * 1e4
        };
    }
    None
}

/// Solves a convex QP. Statuses mirror the LP solver.
pub fn qp_solve(p: &QpProblem) -> Result<QpSolution> {
    let n = p.c.len();
    let cons = gather(p)?;
    let Some(mut x) = feasible_start(p)? else {
        return Ok(QpSolution {
            status: Status::Infeasible,
            x: vec![],
            value: f64::NAN,
            iterations: 0,
            active_multipliers: vec![],
        });
    };
    let m_ineq = cons.ineq.len();
    // working set: indices into cons.ineq treated as equalities
    let mut working: Vec<usize> = Vec::new();
    let max_iter = 100 * (n + m_ineq + cons.eq.len()) + 1000;
    let mut iters = 0usize;
    let mut last_multipliers: Vec<(usize, f64)> = Vec::new();

    loop {
        if iters >= max_iter {
            return Ok(QpSolution {
                status: Status::MaxIterations,
                x,
                value: f64::NAN,
                iterations: iters,
                active_multipliers: vec![],
            });
        }
        iters += 1;

        let g: Vec<f64> = {
            let dx = mat_vec(&p.d, &x);
            dx.iter().zip(&p.c).map(|(a, b)| a + b).collect()
        };
        let rows: Vec<&Vec<f64>> = cons
            .eq
            .iter()
            .map(|(a, _)| a)
            .chain(working.iter().map(|&i| &cons.ineq[i].0))
            .collect();
        let Some((step, mu)) = solve_eqp(&p.d, &g, &rows) else {
            return Err(Error::Solver("singular KKT system".into()));
        };
        let step_norm = step.iter().cloned().fold(0.0f64, |a, v| a.max(v.abs()));
        let x_scale = x.iter().cloned().fold(1.0f64, |a, v| a.max(v.abs()));
        let g_scale = g.iter().cloned().fold(0.0f64, |a, v| a.max(v.abs()));
        let curvature = dot(&step, &mat_vec(&p.d, &step));
        // expected objective decrease along the subproblem step
        let decrease = -(dot(&g, &step) + 0.5 * curvature);
        let stationary =
            step_norm <= 1e-12 * x_scale || decrease <= 1e-12 * (1.0 + g_scale * x_scale);

        if stationary {
            // check multipliers of the working inequalities
            // (lambda = -mu for rows after the equalities)
            let n_eq = cons.eq.len();
            let mut worst: Option<(usize, f64)> = None;
            last_multipliers.clear();
            for (widx, &ci) in working.iter().enumerate() {
                let lambda = -mu[n_eq + widx];
                last_multipliers.push((ci, lambda));
                if lambda < -OPT_TOL {
                    match worst {
                        None => worst = Some((widx, lambda)),
                        Some((_, wl)) if lambda < wl => worst = Some((widx, lambda)),
                        _ => {}
                    }
                }
            }
            match worst {
                None => {
                    let value = 0.5 * dot(&x, &mat_vec(&p.d, &x)) + dot(&p.c, &x) + p.c0;
                    return Ok(QpSolution {
                        status: Status::Optimal,
                        x,
                        value,
                        iterations: iters,
                        active_multipliers: last_multipliers,
                    });
                }
                Some((widx, _)) => {
                    working.remove(widx);
                }
            }
            continue;
        }

        // zero-curvature steps are pure directions with no natural unit step
        let linear = curvature <= 1e-14 * step_norm * step_norm;
        let (dir, alpha_cap) = if linear {
            let d: Vec<f64> = step.iter().map(|v| v / step_norm).collect();
            (d, f64::INFINITY)
        } else {
            (step, 1.0)
        };

        // ratio test against inactive inequalities
        let mut alpha = alpha_cap;
        let mut blocker: Option<usize> = None;
        for (i, (ai, bi)) in cons.ineq.iter().enumerate() {
            if working.contains(&i) {
                continue;
            }
            let ap = dot(ai, &dir);
            let row_scale = ai
                .iter()
                .map(|v| v.abs())
                .fold(0.0f64, f64::max)
                .max(1e-300);
            if ap < -1e-12 * row_scale {
                let slack = (dot(ai, &x) - bi).max(0.0);
                let amax = slack / -ap;
                if amax < alpha {
                    alpha = amax;
                    blocker = Some(i);
                }
            }
        }
        if !alpha.is_finite() {
            return Ok(QpSolution {
                status: Status::Unbounded,
                x,
                value: f64::NAN,
                iterations: iters,
                active_multipliers: vec![],
            });
        }
        for (xi, si) in x.iter_mut().zip(&dir) {
            *xi += alpha * si;
        }
        if let Some(bi) = blocker {
            if alpha < alpha_cap {
                working.push(bi);
                working.sort_unstable();
            }
        }
    }
}

/// Largest violation of the original constraints at `x`.
pub fn qp_feasibility_residual(p: &QpProblem, x: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for ((row, &bi), rel) in p.a.iter().zip(&p.b).zip(&p.relations) {
        let v = dot(row, x);
        let viol = match rel {
            Relation::Eq => (v - bi).abs(),
            Relation::Ge => (bi - v).max(0.0),
            Relation::Le => (v - bi).max(0.0),
        };
        worst = worst.max(viol);
    }
    for (j, &xj) in x.iter().enumerate() {
        if p.lower[j].is_finite() {
            worst = worst.max(p.lower[j] - xj);
        }
        if p.upper[j].is_finite() {
            worst = worst.max(xj - p.upper[j]);
        }
    }
    worst
}
