//! Complex maximal Abelian subalgebras of u(n): construction from coefficient
//! tables, validation, PT classification and the catalog of named families.

mod catalog;
mod format;
mod spec;

pub use catalog::{catalog_masa, lambda_model_rows, CatalogName, MasaParams};
pub use format::{parse_masa_json, MasaFile, RawCoeff};
pub use spec::{
    classify_pt, masa_from_coeffs, nilpotency_order, sparse_row, uniform_sign, validate_masa, MasaReport, MasaSpec,
    SignedPermutation,
};

use lie_algebra::LieError;
use numeric_core::NumericError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MasaError {
    #[error("basis index {index} is not a symmetric generator of u({n})")]
    BadBasisIndex { index: usize, n: usize },
    #[error("generator Z{generator} has no PT sign for this parity")]
    NotPTCompatible { generator: usize },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("unknown MASA family {0:?}")]
    UnknownName(String),
    #[error("missing parameter {0}")]
    MissingParam(&'static str),
    #[error("parity is not a symmetric involutive signed permutation")]
    InvalidParity,
    #[error("malformed MASA file: {0}")]
    Format(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}
