//! Reduction of free motion on the complexified sphere by a complex MASA.
//!
//! [`Reducer`] holds the symbolic matrix `𝒜`, its adjugate and determinant and
//! the images `X̂` of every generator. On top of it sit the reduced
//! Hamiltonian, the integral catalog and the exact verification of the
//! algebraic relations between them.

mod coords;
mod integrals;
mod jacobian;
mod points;
mod racah;
mod system;
mod verify;

pub use coords::{coordinate_map, verify_coordinate_map, CoordinateReport, LambdaConstants};
pub use integrals::{degenerate_hamiltonian, displayed_potential, integrals_catalog, Integral};
pub use jacobian::{jacobian_check, JacobianCheck};
pub use points::{regular_points, DEFAULT_SEED};
pub use racah::{racah_structure_report, Fit, RacahReport};
pub use system::{
    build_a, build_hamiltonian, build_potential, build_v_matrix, momentum_map, project_env_element, PolyMatrix,
    PtData, ReducedSystem, Reducer,
};
pub use verify::{
    check_conservation, verify_casimir_projection, verify_homomorphism, verify_pt_invariance, verify_relation,
    sum_relation, verify_sum_relation, verify_zhat, CasimirReport, ConservationReport, HomomorphismReport, PtReport, RelationReport,
};

use lie_algebra::LieError;
use masa::MasaError;
use numeric_core::NumericError;
use phase_space::PhaseError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReductionError {
    #[error("det 𝒱 vanishes identically; the MASA does not reduce")]
    DegenerateMasa,
    #[error("relation {relation} fails: residual {residual} at {point}")]
    RelationFailed { relation: String, point: String, residual: String },
    #[error("model {0} has fewer than three integrals")]
    NoAlgebra(String),
    #[error("fit needs {unknowns} independent samples, got rank {rank}")]
    FitUnderdetermined { unknowns: usize, rank: usize },
    #[error("fit is inconsistent: the target is not in the span")]
    FitInconsistent,
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("Gram identity 𝒱 = −𝒜ᵀ𝒜 fails at entry ({0}, {1})")]
    GramMismatch(usize, usize),
    #[error(transparent)]
    Masa(#[from] MasaError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}
