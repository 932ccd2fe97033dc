//! Embedded small-scale solvers: dense LP (two-phase simplex with Bland's
//! rule), convex QP (primal active set), one-dimensional minimization, and
//! BFGS.

pub mod bfgs;
pub mod brent;
pub(crate) mod linalg;
pub mod lp;
pub mod qp;

pub use bfgs::{numeric_gradient, qn_minimize, QnOptions, QnResult};
pub use brent::brent_minimize;
pub use lp::{lp_solve, LpProblem, LpSolution, Relation, Status};
pub use qp::{qp_feasibility_residual, qp_solve, QpProblem, QpSolution};
