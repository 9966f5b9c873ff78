//! Quantum checks of the reduced models: Fourier and finite-difference
//! spectra on the circle and for the separated sphere equations, closed-form
//! energies, terminating hypergeometric and Bessel series, 𝒫𝒯 parity and
//! phase scans.

mod circle;
mod couplings;
mod eigenfunctions;
mod fd;
mod metamorphosis;
mod report;
mod scan;
mod special;

pub use circle::{fourier_coefficients, fourier_matrix, is_lower_triangular, solve_periodic_s1};
pub use couplings::{
    circle_couplings_from_g, circle_level_union, closed_form_energies, coupling_maps, root_convention, sphere_energy,
    CouplingMap, EnergyModel, Level, ModelParams,
};
pub use eigenfunctions::{eigenfunction_eval, pt_parity_check, Angle, Branch, Eigenfunction};
pub use fd::{fd_spectrum, solve_chi_equation, solve_poschl_teller, MIN_GRID};
pub use metamorphosis::{metamorphosis_check, MetamorphosisCase, MetamorphosisReport};
pub use report::{ClosedFormMatch, PhaseLabel, SpectrumReport, FD_REALITY_TOL, FOURIER_REALITY_TOL, LOWEST_K};
pub use scan::{pt_phase_scan, scan_grid, ScanConfig};
pub use special::{bessel_ode_residual, bessel_series_psi, central_second_derivative, hyp2f1_exact, hyp2f1_terminating, BesselSeries};

use numeric_core::NumericError;

pub type C = numeric_core::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("potential is singular on the real circle")]
    SingularPotential,
    #[error("unsupported couplings: {0}")]
    BadCouplings(String),
    #[error("grid size {n} is below the minimum {min}")]
    GridTooSmall { n: usize, min: usize },
    #[error("c = {0} is a non-positive integer inside the truncated sum")]
    PoleInC(String),
    #[error("first hypergeometric parameter {0} is not a non-positive integer")]
    NonTerminating(String),
    #[error("non-integer exponent {0}: the eigenfunction is multi-valued")]
    MultiValuedConfiguration(String),
    #[error("no definite 𝒫𝒯 parity (ratio {0})")]
    NoDefiniteParity(String),
    #[error("couplings are complex")]
    ComplexCouplings,
    #[error("residual {residual:e} exceeds {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

fn fmt_c(z: C) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}
