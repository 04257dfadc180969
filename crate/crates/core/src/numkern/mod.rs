//! Dense numerical kernel shared by the cone, factor and extremal modules.
//!
//! Everything here works on small dense matrices (orders up to a dozen or
//! so): Jacobi eigensolver, pivoted Cholesky, one-sided Jacobi SVD, numerical
//! rank, and a dense two-phase simplex. All comparisons against zero go
//! through a single [`Tolerance`].

mod chol;
mod dense;
mod eigen;
mod lp;
mod svd;
mod sym;
mod tol;

pub use chol::{pivoted_cholesky, PivotedCholesky};
pub use dense::{dot, norm2, norm_inf, solve_dense, Mat};
pub use eigen::{eig_sym, num_rank, psd_check, PsdCheck, SymEigen};
pub use lp::{lp_feasible, lp_solve, LpOptions, LpOutcome, LpProblem, MAX_LP_VARS};
pub use svd::{polar_orthogonal, svd, Svd};
pub use sym::SymMat;
pub use tol::{support, Tolerance};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("matrix is not symmetric: |A[{i}][{j}] - A[{j}][{i}]| = {diff:e}")]
    NotSymmetric { i: usize, j: usize, diff: f64 },
    #[error("matrix is not positive semidefinite (pivot {min_pivot:e})")]
    NotPsd { min_pivot: f64 },
    #[error("linear program has {0} variables, limit is {MAX_LP_VARS}")]
    LpTooLarge(usize),
    #[error("simplex pivot limit exceeded (cycling guard)")]
    LpCycling,
}

impl NumError {
    pub fn tag(&self) -> &'static str {
        match self {
            NumError::Shape(_) => "SHAPE",
            NumError::NonFinite => "NON_FINITE",
            NumError::NotSymmetric { .. } => "NOT_SYMMETRIC",
            NumError::NotPsd { .. } => "NOT_PSD",
            NumError::LpTooLarge(_) => "LP_TOO_LARGE",
            NumError::LpCycling => "LP_CYCLING",
        }
    }
}
