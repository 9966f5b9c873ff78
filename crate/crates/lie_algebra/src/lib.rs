//! Matrix realizations of u(2) and u(3), their structure constants, and
//! elements of the universal enveloping algebra in PBW normal form.

mod basis;
mod env;

pub use basis::{
    build_generators, commutator_matrix, structure_table, verify_structure_constants, GeneratorBasis, StructureEntry,
    StructureReport,
};
pub use env::{casimir_element, env_commutator, pbw_normal_form, pbw_normal_form_with, EnvElement, RewriteOrder, Word};

use numeric_core::NumericError;

/// Longest enveloping-algebra word that is ever formed.
pub const MAX_WORD_LEN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("unsupported rank {0}: only u(2) and u(3) are available")]
    UnsupportedRank(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("word of length {len} exceeds the maximum {max}")]
    WordTooLong { len: usize, max: usize },
    #[error("unsupported Casimir order {order} for u({n})")]
    UnsupportedOrder { order: u32, n: usize },
    #[error("generator index {index} out of range for a basis of size {size}")]
    BadIndex { index: usize, size: usize },
    #[error("matrices do not span the full matrix algebra")]
    NotABasis,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}
