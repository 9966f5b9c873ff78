use numeric_core::{eig_dense, CMatrixFloat};

use crate::couplings::{circle_level_union, coupling_maps, ModelParams};
use crate::report::{params, ClosedFormMatch, SpectrumReport, FOURIER_REALITY_TOL, LOWEST_K};
use crate::{fmt_c, SpectralError, C};

/// Fourier coefficients `V̂_f`, `f = −2t_max..=2t_max` (index `f + 2t_max`), of
/// `V(φ) = [2k₁k₂(a cos2φ − ib sin2φ) − k₁²(a²−b²) − k₂²]/(b cos2φ − ia sin2φ)²`.
///
/// With `x = e^{2iφ}` (or `e^{−2iφ}` when `|a−b| > |a+b|`) the potential is
/// `4x[k₁k₂(P₀ + P₂x²) − Cx]/(Q₀ + Q₂x²)²` with `|Q₂/Q₀| < 1`, so the binomial
/// series in `x` gives the coefficients directly and only one sign of
/// frequency occurs.
pub fn fourier_coefficients(a: f64, b: f64, k1: C, k2: C, t_max: usize) -> Result<Vec<C>, SpectralError> {
    if a * b == 0.0 || !(a.is_finite() && b.is_finite()) {
        return Err(SpectralError::SingularPotential);
    }
    let cc = k1 * k1 * (a * a - b * b) + k2 * k2;
    let kk = k1 * k2;
    let positive = (a - b).abs() < (a + b).abs();
    let (p0, p2, q0, q2) = if positive { (a + b, a - b, a + b, b - a) } else { (a - b, a + b, b - a, a + b) };
    let r = q2 / q0;
    // 1/(1 + r x²)² = Σ_j (j+1)(−r)^j x^{2j}
    let s = |u: i64| -> f64 {
        if u < 0 || u % 2 != 0 {
            0.0
        } else {
            let j = u / 2;
            (j as f64 + 1.0) * (-r).powi(j as i32)
        }
    };
    let scale = 4.0 / (q0 * q0);
    let mut out = vec![C::from(0.0); 4 * t_max + 1];
    for t in 1..=t_max as i64 {
        let c = (kk * p0 * s(t - 1) - cc * s(t - 2) + kk * p2 * s(t - 3)) * scale;
        let f = if positive { 2 * t } else { -2 * t };
        out[(f + 2 * t_max as i64) as usize] = c;
    }
    Ok(out)
}

/// Galerkin matrix of `−d²/dφ² + V` on `e^{imφ}`, `m = −N/2..=N/2`, ordered by `m`.
pub fn fourier_matrix(a: f64, b: f64, k1: C, k2: C, n: usize) -> Result<CMatrixFloat, SpectralError> {
    if n % 2 != 0 || n == 0 {
        return Err(SpectralError::InvalidParameter(format!("N = {n} must be even and positive")));
    }
    let half = (n / 2) as i64;
    let t_max = n / 2;
    let coef = fourier_coefficients(a, b, k1, k2, t_max)?;
    let dim = n + 1;
    let off = 2 * t_max as i64;
    Ok(CMatrixFloat::from_fn(dim, dim, |i, j| {
        let (mi, mj) = (i as i64 - half, j as i64 - half);
        let f = mi - mj;
        let v = if f.abs() <= off { coef[(f + off) as usize] } else { C::from(0.0) };
        if i == j {
            v + (mi * mi) as f64
        } else {
            v
        }
    })?)
}

pub fn is_lower_triangular(m: &CMatrixFloat) -> bool {
    (0..m.rows()).all(|i| (i + 1..m.cols()).all(|j| m[(i, j)] == C::from(0.0)))
}

/// Fourier discretization on the real circle with dense eigensolve.
/// Closed-form membership uses the branch union of both solution families.
pub fn solve_periodic_s1(a: f64, b: f64, k1: C, k2: C, n: usize) -> Result<SpectrumReport, SpectralError> {
    if a == 0.0 && b == 0.0 {
        return Err(SpectralError::InvalidParameter("(a, b) = (0, 0)".into()));
    }
    let m = fourier_matrix(a, b, k1, k2, n)?;
    let values = eig_dense(&m)?;
    let p = params(&[("a", a.to_string()), ("b", b.to_string()), ("k1", fmt_c(k1)), ("k2", fmt_c(k2))]);
    let mut rep = SpectrumReport::new("circle", p, n, values, LOWEST_K, FOURIER_REALITY_TOL);
    if is_lower_triangular(&m) {
        rep.notes.push("momentum-basis matrix is lower triangular".into());
    }
    if b > a {
        rep.notes.push("b > a: reported descriptively".into());
    }
    let cm = coupling_maps(&ModelParams::Circle { a, b, k1, k2 });
    if let Some((gm, gp)) = cm.g_real() {
        let union = circle_level_union(gm, gp, 2 * LOWEST_K);
        rep.matches = rep
            .lowest()
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let (v, label) = union
                    .iter()
                    .min_by(|x, y| (e - x.0).norm().total_cmp(&(e - y.0).norm()))
                    .cloned()
                    .unwrap_or((f64::NAN, String::new()));
                ClosedFormMatch::new(i, e, v, label)
            })
            .collect();
        rep.notes.push(format!("g- = {gm}, g+ = {gp}"));
    } else {
        rep.notes.push(format!("couplings: {cm}"));
    }
    Ok(rep)
}
