use num_traits::Zero;
use numeric_core::{CRat, Scalar};

use crate::jet::Jet;
use crate::poly::PhasePoly;
use crate::rational::PhaseRational;
use crate::PhaseError;

fn check_dims(f: &PhaseRational, g: &PhaseRational) -> Result<usize, PhaseError> {
    if f.n() != g.n() {
        return Err(PhaseError::DimensionMismatch { expected: f.n(), found: g.n() });
    }
    Ok(f.n())
}

/// `Σ_μ (∂f/∂s_μ ∂g/∂p_μ − ∂f/∂p_μ ∂g/∂s_μ)`; couplings `k` are central.
pub fn poisson_bracket(f: &PhaseRational, g: &PhaseRational) -> Result<PhaseRational, PhaseError> {
    let n = check_dims(f, g)?;
    let mut acc = PhaseRational::zero(n);
    for mu in 0..n {
        let a = &f.derivative(mu) * &g.derivative(n + mu);
        let b = &f.derivative(n + mu) * &g.derivative(mu);
        acc = &acc + &(&a - &b);
    }
    Ok(acc)
}

/// Bracket on the constrained surface `s·s = 1`, `s·p = 0`:
/// `{f,g} + ({f,C₁}{C₂,g} − {f,C₂}{C₁,g}) / (2 s·s)`.
pub fn dirac_bracket(f: &PhaseRational, g: &PhaseRational) -> Result<PhaseRational, PhaseError> {
    let n = check_dims(f, g)?;
    let c1 = PhaseRational::from_poly(PhasePoly::constraint_sphere(n));
    let c2 = PhaseRational::from_poly(PhasePoly::constraint_tangent(n));
    let base = poisson_bracket(f, g)?;
    let corr = &(&poisson_bracket(f, &c1)? * &poisson_bracket(&c2, g)?) - &(&poisson_bracket(f, &c2)? * &poisson_bracket(&c1, g)?);
    let m = PhaseRational::from_poly(PhasePoly::s_dot_s(n).scale(&Scalar::from_int(2)));
    Ok(&base + &corr.checked_div(&m)?)
}

/// Canonical bracket of two jets; the result has order `min(orders) − 1`.
pub fn canonical_bracket_jet(f: &Jet, g: &Jet, n: usize) -> Result<Jet, PhaseError> {
    let order = f.order().min(g.order());
    if order == 0 {
        return Err(PhaseError::JetOrder);
    }
    let m = f.nvars();
    let mut val = Scalar::zero();
    for mu in 0..n {
        val += &(f.grad(mu) * g.grad(n + mu));
        val -= &(f.grad(n + mu) * g.grad(mu));
    }
    let grad = if order >= 2 {
        (0..m)
            .map(|a| {
                let mut v = Scalar::zero();
                for mu in 0..n {
                    v += &(f.hess(mu, a) * g.grad(n + mu));
                    v += &(f.grad(mu) * g.hess(n + mu, a));
                    v -= &(f.hess(n + mu, a) * g.grad(mu));
                    v -= &(f.grad(n + mu) * g.hess(mu, a));
                }
                v
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(Jet::from_parts(order - 1, m, val, grad, Vec::new()))
}

/// Jets of `C₁`, `C₂` and `1/(2 s·s)` at a point.
pub fn constraint_jets(n: usize, x: &[CRat], order: u8) -> Result<(Jet, Jet, Jet), PhaseError> {
    let c1 = PhasePoly::constraint_sphere(n).jet(x, order);
    let c2 = PhasePoly::constraint_tangent(n).jet(x, order);
    let m = PhasePoly::s_dot_s(n).scale(&Scalar::from_int(2)).jet(x, order).inv()?;
    Ok((c1, c2, m))
}

/// Dirac bracket of jets at `x`; the result has order `min(orders) − 1`.
pub fn dirac_bracket_jet(f: &Jet, g: &Jet, n: usize, x: &[CRat]) -> Result<Jet, PhaseError> {
    let order = f.order().min(g.order());
    let (c1, c2, minv) = constraint_jets(n, x, order)?;
    let base = canonical_bracket_jet(f, g, n)?;
    let fc1 = canonical_bracket_jet(f, &c1, n)?;
    let fc2 = canonical_bracket_jet(f, &c2, n)?;
    let c1g = canonical_bracket_jet(&c1, g, n)?;
    let c2g = canonical_bracket_jet(&c2, g, n)?;
    let corr = fc1.mul(&c2g).sub(&fc2.mul(&c1g));
    Ok(base.add(&corr.mul(&minv.truncate(order - 1))))
}
