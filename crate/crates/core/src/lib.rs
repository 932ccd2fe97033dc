//! A self-contained data-fusion toolkit: aggregation functions and OWA
//! operators, discrete fuzzy integrals, penalty-based medians and data
//! depths, weight-fitting procedures, string consensus algorithms, and
//! numerical characteristics of data and of the fusion functions themselves.
//!
//! The crate is organized by the kind of object being fused:
//!
//! - [`means`], [`connectives`], [`falsify`] -- univariate fusion functions
//!   and randomized property checking;
//! - [`integrals`] -- monotone measures with the Choquet, Sugeno, and
//!   Shilkret integrals;
//! - [`optim`] -- the embedded LP/QP/Brent/BFGS solvers the fitting and
//!   geometry modules build on;
//! - [`fitting`] -- weight learning for weighted (quasi-)arithmetic means;
//! - [`multivariate`] -- point-cloud medians, centers, and data depths;
//! - [`strings`] -- edit distances and consensus sequences;
//! - [`informetric`] -- variable-length record fusion and impact functions;
//! - [`characteristics`] -- spread and shape measures, orness, entropy,
//!   breakdown probing;
//! - [`exemplar`] -- medoid-style search in finite semimetric spaces.
//!
//! All randomized routines take explicit seeds and are deterministic for a
//! fixed seed. Values are immutable after construction; everything is safe
//! to use from multiple threads on distinct or shared inputs.

pub mod characteristics;
pub mod connectives;
pub mod error;
pub mod exemplar;
pub mod falsify;
pub mod fitting;
pub mod informetric;
pub mod integrals;
pub mod means;
pub mod multivariate;
pub mod optim;
pub mod order;
pub mod strings;
pub mod types;

pub use error::{Error, Result};
pub use types::{Generator, RealVector, WeightVector};
