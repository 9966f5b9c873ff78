use std::collections::BTreeMap;

use masa::MasaSpec;
use numeric_core::{mat_exp_numeric, CMatrixFloat, Complex64};

use crate::system::build_v_matrix;
use crate::ReductionError;

type C = Complex64;

/// Float check of the Jacobian identities at `(x, s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianCheck {
    pub masa: String,
    pub x: Vec<f64>,
    pub s: Vec<f64>,
    /// Relative residual per identity.
    pub residuals: BTreeMap<String, f64>,
}

impl JacobianCheck {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0, |a, &b| a.max(b))
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.residuals.values().all(|r| r.is_finite() && *r <= tol)
    }
}

fn rel(a: &CMatrixFloat, b: &CMatrixFloat) -> f64 {
    (a - b).max_abs() / b.max_abs().max(1.0)
}

/// `A(x)_{μν} = (B(x) Z_ν s)_μ`.
fn a_matrix(zs: &[CMatrixFloat], b: &CMatrixFloat, s: &[C]) -> CMatrixFloat {
    let n = s.len();
    let cols: Vec<Vec<C>> = zs.iter().map(|z| b.mul_vec(&z.mul_vec(s))).collect();
    CMatrixFloat::from_fn(n, n, |mu, nu| cols[nu][mu]).expect("square")
}

/// With `B = exp(Σ x_μ Z_μ)` and `J = [[A, B], [−B⁻²A, B⁻¹]]`: residuals of
/// `J⁻¹ℐJ⁻ᵀ = ½ diag(𝒱⁻¹, I)`, of the closed-form `J⁻¹`, of `𝒱(x) = 𝒱(0)`,
/// of `𝒱 = −A(0)ᵀA(0)` and of `𝒱` against the symbolic matrix.
pub fn jacobian_check(masa: &MasaSpec, x: &[f64], s: &[f64]) -> Result<JacobianCheck, ReductionError> {
    let n = masa.n();
    for len in [x.len(), s.len()] {
        if len != n {
            return Err(phase_space::PhaseError::DimensionMismatch { expected: n, found: len }.into());
        }
    }
    let zs: Vec<CMatrixFloat> = masa.matrices().iter().map(|z| z.to_float()).collect();
    let sc: Vec<C> = s.iter().map(|&v| C::from(v)).collect();
    let gen = zs.iter().zip(x).fold(CMatrixFloat::zeros(n, n), |acc, (z, &xi)| &acc + &z.scale(C::from(xi)));
    let b = mat_exp_numeric(&gen)?;
    let b_inv = b.inverse()?;
    let b_inv2 = &b_inv * &b_inv;
    let a = a_matrix(&zs, &b, &sc);
    let a0 = a_matrix(&zs, &CMatrixFloat::identity(n), &sc);

    let v_x = (&(&a.transpose() * &b_inv2) * &a).scale(C::from(-1.0));
    let v_0 = (&a0.transpose() * &a0).scale(C::from(-1.0));
    let sym = build_v_matrix(masa)?;
    let mut point = vec![C::from(0.0); 3 * n];
    point[..n].copy_from_slice(&sc);
    let v_sym = CMatrixFloat::from_fn(n, n, |i, j| sym[i][j].eval_c64(&point)).expect("square");

    let j = CMatrixFloat::block(&[&[&a, &b], &[&(&b_inv2 * &a).scale(C::from(-1.0)), &b_inv]]);
    let j_inv = j.inverse()?;
    let a_inv = a.inverse()?;
    let closed = CMatrixFloat::block(&[&[&a_inv, &(&(&a_inv * &b) * &b).scale(C::from(-1.0))], &[&b_inv, &b]])
        .scale(C::from(0.5));
    let zero = CMatrixFloat::zeros(n, n);
    let id = CMatrixFloat::identity(n);
    let swap = CMatrixFloat::block(&[&[&zero, &id], &[&id, &zero]]);
    let lhs = &(&j_inv * &swap) * &j_inv.transpose();
    let rhs = CMatrixFloat::block(&[&[&v_x.inverse()?, &zero], &[&zero, &id]]).scale(C::from(0.5));

    let mut residuals = BTreeMap::new();
    residuals.insert("jij_block".to_string(), rel(&lhs, &rhs));
    residuals.insert("j_inverse_closed_form".to_string(), rel(&closed, &j_inv));
    residuals.insert("v_x_independent".to_string(), rel(&v_x, &v_0));
    residuals.insert("v_gram".to_string(), rel(&v_0, &v_sym));
    Ok(JacobianCheck { masa: masa.name().unwrap_or("custom").to_string(), x: x.to_vec(), s: s.to_vec(), residuals })
}
