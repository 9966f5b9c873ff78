//! Exact and floating-point complex linear algebra kernel.
//!
//! [`CRat`] is an exact Gaussian rational and [`Scalar`] the multi-quadratic
//! extension over it used whenever square roots of rationals appear.

pub mod crat;
pub mod eig;
pub mod exact_matrix;
pub mod expm;
pub mod float_matrix;
pub mod par;
pub mod scalar;
pub mod tridiag;

pub use crat::{fmt_rational, parse_rational, rat, rat_to_f64, CRat};
pub use eig::{eig_dense, eig_dense_vectors, eig_dense_with, max_residual, sort_by_real, EigConfig, EigDecomposition};
pub use exact_matrix::{exact_inverse, CMatrixExact};
pub use expm::mat_exp_numeric;
pub use float_matrix::CMatrixFloat;
pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use par::ExecMode;
pub use scalar::Scalar;
pub use tridiag::eig_sym_tridiagonal;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square")]
    NotSquare,
    #[error("rows have different lengths")]
    Ragged,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite entry")]
    NonFinite,
    #[error("eigen iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("radicand does not fit in 64 bits")]
    RadicandTooLarge,
}
