//! Polynomial and rational functions on the phase space of the n-sphere,
//! Poisson and Dirac brackets, and exact identity testing at rational points
//! of the constraint surface `s·s = 1`, `s·p = 0`.

mod bracket;
mod identity;
mod jet;
mod poly;
mod rational;
mod sample;

pub use bracket::{canonical_bracket_jet, constraint_jets, dirac_bracket, dirac_bracket_jet, poisson_bracket};
pub use identity::{check_identity, trial_count, vanishes_on_constraint, IdentityReport, RETRY_BUDGET};
pub use jet::Jet;
pub use poly::{PhasePoly, Var};
pub use rational::PhaseRational;
pub use sample::{sample_constraint_point, ConstraintPoint, ConstraintSampler};

use numeric_core::NumericError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PhaseError {
    #[error("phase-space dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no regular constraint point found after {attempts} resamples")]
    SamplingExhausted { attempts: usize },
    #[error("expression is singular at the sampled point")]
    Singular,
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("point does not satisfy the constraints")]
    OffConstraint,
    #[error("jet order too low for the requested bracket")]
    JetOrder,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}
