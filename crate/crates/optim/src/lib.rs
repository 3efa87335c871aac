//! Numerical and analytic maximization of
//! `phi(s) = sum_{r=rho..k} min(r^2/4, 1 s_1 + ... + r s_r)` over nonnegative
//! tuples with `sum s <= rho`, the counting step behind the `0.1654 n^3`
//! reset-threshold bound.

pub mod lp;
pub mod psi;
pub mod report;
pub mod simplex;
pub mod tuple;

use thiserror::Error;

pub use lp::{lp_max_phi, lp_max_phi_normalized, PhiOptimum};
pub use psi::{bound_coefficient, maximize_psi, phi_coefficient, psi, PsiMaximum, Rational};
pub use report::{best_over_rho, convergence_report, ConvergenceReport, ConvergenceRow, RhoScan};
pub use simplex::{LinearProgram, LpError};
pub use tuple::{claim1_normalize, phi, phi_linear, FeasibleTuple};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimError {
    #[error("parameters need 0 < rho < n/2 (got n = {n}, rho = {rho})")]
    InvalidParameters { n: usize, rho: usize },
    #[error("infeasible tuple: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Lp(#[from] LpError),
}
