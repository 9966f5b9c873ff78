use std::f64::consts::PI;

use numeric_core::CRat;
use num_traits::Zero;

use crate::{fmt_c, SpectralError, C};

fn pole_check(a: i64, c_at: impl Fn(i64) -> bool, c_text: impl Fn() -> String) -> Result<(), SpectralError> {
    if a > 0 {
        return Err(SpectralError::NonTerminating(a.to_string()));
    }
    if (0..-a).any(c_at) {
        return Err(SpectralError::PoleInC(c_text()));
    }
    Ok(())
}

/// `₂F₁(a, b; c; x) = Σ_{j=0}^{−a} (a)_j (b)_j / (c)_j · x^j / j!` for integer `a ≤ 0`.
pub fn hyp2f1_terminating(a: i64, b: C, c: C, x: C) -> Result<C, SpectralError> {
    pole_check(a, |j| (c + j as f64).norm() == 0.0, || fmt_c(c))?;
    let mut term = C::from(1.0);
    let mut sum = term;
    for j in 0..-a {
        let jf = j as f64;
        term = term * (a as f64 + jf) * (b + jf) / ((c + jf) * (jf + 1.0)) * x;
        sum += term;
    }
    Ok(sum)
}

/// Exact terminating `₂F₁` over Gaussian rationals.
pub fn hyp2f1_exact(a: i64, b: &CRat, c: &CRat, x: &CRat) -> Result<CRat, SpectralError> {
    pole_check(a, |j| (c + &CRat::from_int(j)).is_zero(), || c.to_string())?;
    let mut term = CRat::from_int(1);
    let mut sum = term.clone();
    for j in 0..-a {
        let jr = CRat::from_int(j);
        let num = &(&CRat::from_int(a + j) * &(b + &jr)) * x;
        let den = &(c + &jr) * &CRat::from_int(j + 1);
        term = &(&term * &num) * &den.inv()?;
        sum = &sum + &term;
    }
    Ok(sum)
}

/// Truncated series with derivatives in `z` and a ratio-test tail bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselSeries {
    pub value: C,
    pub d1: C,
    pub d2: C,
    /// Bound on the neglected tail of `value` (infinite when the ratio test
    /// does not apply yet).
    pub tail_bound: f64,
}

/// `Γ(q + 3/2)` for integer `q ≥ 0`.
fn gamma_half(q: u32) -> f64 {
    (0..q).fold(PI.sqrt() / 2.0, |g, i| g * (i as f64 + 1.5))
}

/// `ψ_{α,q}(z) = Σ_j (−1)^j/(j! Γ(j+q+3/2)) (αz/2)^{2j+q+1}`.
pub fn bessel_series_psi(alpha: C, q: u32, z: C, terms: usize) -> Result<BesselSeries, SpectralError> {
    if terms == 0 {
        return Err(SpectralError::InvalidParameter("terms must be at least 1".into()));
    }
    let x = alpha * z / 2.0;
    let x2 = x * x;
    // coefficient of (αz/2)^{2j+q+1}; derivatives taken in z through x
    let mut coef = C::from(1.0 / gamma_half(q));
    let mut out = BesselSeries { value: C::from(0.0), d1: C::from(0.0), d2: C::from(0.0), tail_bound: f64::INFINITY };
    let dx = alpha / 2.0;
    let mut last = 0.0;
    for j in 0..terms {
        let p = (2 * j) as i32 + q as i32 + 1;
        let pf = p as f64;
        let xp = x.powi(p);
        out.value += coef * xp;
        if p >= 1 {
            out.d1 += coef * x.powi(p - 1) * pf * dx;
        }
        if p >= 2 {
            out.d2 += coef * x.powi(p - 2) * (pf * (pf - 1.0)) * dx * dx;
        }
        last = (coef * xp).norm();
        coef = -coef / ((j as f64 + 1.0) * (j as f64 + q as f64 + 1.5));
    }
    // later ratios |term_{j+1}/term_j| only decrease
    let (t, qf) = (terms as f64, q as f64);
    let ratio = x2.norm() / ((t + 1.0) * (t + qf + 1.5));
    if ratio < 1.0 {
        out.tail_bound = last * x2.norm() / (t * (t + qf + 0.5)) / (1.0 - ratio);
    }
    Ok(out)
}

/// Eighth-order central difference for `f''(z)` with step `h`.
pub fn central_second_derivative(f: impl Fn(C) -> C, z: C, h: f64) -> C {
    const W: [f64; 5] = [-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];
    let mut acc = f(z) * W[0];
    for (k, w) in W.iter().enumerate().skip(1) {
        let d = h * k as f64;
        acc += (f(z + d) + f(z - d)) * *w;
    }
    acc / (h * h)
}

/// Relative residual of `−ψ'' + (E/z²)ψ = α²ψ`, `E = q(q+1)`, with `ψ''`
/// from central differences.
pub fn bessel_ode_residual(alpha: C, q: u32, z: C, terms: usize) -> Result<f64, SpectralError> {
    let psi = |w: C| bessel_series_psi(alpha, q, w, terms).map(|s| s.value).unwrap_or(C::from(f64::NAN));
    let v = psi(z);
    let d2 = central_second_derivative(psi, z, 0.02 * z.norm().max(0.05));
    let e = (q * (q + 1)) as f64;
    let res = -d2 + v * e / (z * z) - alpha * alpha * v;
    let scale = (alpha * alpha * v).norm().max((v * e / (z * z)).norm()).max(1e-300);
    Ok(res.norm() / scale)
}
