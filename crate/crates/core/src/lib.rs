//! Computations in the copositive cone C_n and the completely positive cone
//! CS_n.
//!
//! * [`numkern`]: dense kernel (Jacobi eigensolver, pivoted Cholesky, SVD,
//!   two-phase simplex) and the crate-wide [`Tolerance`].
//! * [`cones`]: membership tests with checkable certificates for the
//!   nonnegative, PSD, copositive and doubly nonnegative cones, plus
//!   sufficient certificates for int CS_n.
//! * [`factor`]: constructive nonnegative factorizations M = VVᵀ
//!   (diagonally dominant, positive diagonally dominant, Horn-orthogonal
//!   order six, order three) and factor transformations.
//! * [`bounds`]: the cp-rank bound calculus.
//! * [`extremal`]: orbit recognition and checks on orthogonal pairs
//!   (M, A) with M completely positive and A copositive.
//! * [`cli`]: file formats and JSON reports behind the `copcone` binary.
//!
//! Indices are zero-based throughout the API.

pub mod bounds;
pub mod cli;
pub mod cones;
pub mod extremal;
pub mod factor;
pub mod numkern;

pub use numkern::{Mat, SymMat, Tolerance};
