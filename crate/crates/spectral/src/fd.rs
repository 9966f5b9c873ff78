use std::f64::consts::FRAC_PI_2;

use numeric_core::{eig_sym_tridiagonal, sort_by_real};

use crate::couplings::sphere_energy;
use crate::report::{params, ClosedFormMatch, SpectrumReport, FD_REALITY_TOL, LOWEST_K};
use crate::{SpectralError, C};

pub const MIN_GRID: usize = 512;

/// Eigenvalues of `−u'' + (g₋(g₋−1)/sin²ξ + g₊(g₊−1)/cos²ξ)u` on `(0, π/2)`
/// with Dirichlet ends, second-order differences on `n` intervals. Complex
/// couplings give a complex symmetric matrix.
pub fn fd_spectrum(gm: C, gp: C, n: usize) -> Result<Vec<C>, SpectralError> {
    if n < 4 {
        return Err(SpectralError::GridTooSmall { n, min: 4 });
    }
    let h = FRAC_PI_2 / n as f64;
    let (cm, cp) = (gm * (gm - 1.0), gp * (gp - 1.0));
    let diag: Vec<C> = (1..n)
        .map(|i| {
            let x = i as f64 * h;
            let (s, c) = x.sin_cos();
            cm / (s * s) + cp / (c * c) + 2.0 / (h * h)
        })
        .collect();
    let off = vec![C::from(-1.0 / (h * h)); n - 2];
    let mut ev = eig_sym_tridiagonal(&diag, &off)?;
    sort_by_real(&mut ev);
    Ok(ev)
}

fn check_grid(n: usize) -> Result<(), SpectralError> {
    if n < MIN_GRID {
        return Err(SpectralError::GridTooSmall { n, min: MIN_GRID });
    }
    Ok(())
}

/// Finite-difference Pöschl–Teller spectrum; the Dirichlet ends select the
/// `ξ^g` branch, so `g₋, g₊ ≥ 1` is required. Matches `(2m + g₋ + g₊)²`.
pub fn solve_poschl_teller(gm: f64, gp: f64, n: usize) -> Result<SpectrumReport, SpectralError> {
    if !(gm >= 1.0 && gp >= 1.0) {
        return Err(SpectralError::BadCouplings(format!("g- = {gm}, g+ = {gp}: Dirichlet selection needs g >= 1")));
    }
    check_grid(n)?;
    let ev = fd_spectrum(C::from(gm), C::from(gp), n)?;
    let mut rep = SpectrumReport::new("poschl_teller", params(&[("g-", gm.to_string()), ("g+", gp.to_string())]), n, ev, LOWEST_K, FD_REALITY_TOL);
    rep.matches = rep
        .lowest()
        .iter()
        .enumerate()
        .map(|(m, &e)| ClosedFormMatch::new(m, e, (2.0 * m as f64 + gm + gp).powi(2), format!("(2m + g- + g+)^2, m = {m}")))
        .collect();
    Ok(rep)
}

/// The χ-equation `−Ψ'' − cotχ Ψ' + (ℓ₃(ℓ₃−1)/cos²χ + M²/sin²χ)Ψ = EΨ`,
/// `M = ℓ₁+ℓ₂+2m`. With `Ψ = (sinχ)^{−1/2}Ψ̃` it becomes Pöschl–Teller with
/// `g₋ = M + 1/2`, `g₊ = ℓ₃` and energy `E + 1/4`. Level `j` is matched to the
/// displayed `E_{n,m}` at `n = j + M`.
pub fn solve_chi_equation(ell: [f64; 3], m: u32, n: usize) -> Result<SpectrumReport, SpectralError> {
    let big_m = ell[0] + ell[1] + 2.0 * m as f64;
    if !(big_m >= 0.5 && ell[2] >= 1.0) {
        return Err(SpectralError::BadCouplings(format!("M = {big_m}, l3 = {}", ell[2])));
    }
    check_grid(n)?;
    let ev: Vec<C> = fd_spectrum(C::from(big_m + 0.5), C::from(ell[2]), n)?.into_iter().map(|e| e - 0.25).collect();
    let p = params(&[
        ("l1", ell[0].to_string()),
        ("l2", ell[1].to_string()),
        ("l3", ell[2].to_string()),
        ("m", m.to_string()),
        ("M", big_m.to_string()),
    ]);
    let mut rep = SpectrumReport::new("chi_equation", p, n, ev, LOWEST_K, FD_REALITY_TOL);
    rep.notes.push("measure: Psi = (sin chi)^(-1/2) u before discretization".into());
    rep.matches = rep
        .lowest()
        .iter()
        .enumerate()
        .map(|(j, &e)| {
            let nn = j as f64 + big_m;
            ClosedFormMatch::new(j, e, sphere_energy(ell, nn, m as f64), format!("E_(n,m), n = {nn}, m = {m}"))
        })
        .collect();
    Ok(rep)
}
