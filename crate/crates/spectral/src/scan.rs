use numeric_core::{par, ExecMode};

use crate::couplings::{coupling_maps, ModelParams};
use crate::fd::fd_spectrum;
use crate::report::{params, ClosedFormMatch, PhaseLabel, SpectrumReport, FD_REALITY_TOL, LOWEST_K};
use crate::special::bessel_ode_residual;
use crate::{fmt_c, SpectralError, C};

const DEGENERATE_TOL: f64 = 1e-12;

/// Scan of the λ-model over `λ²` with fixed real `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub k: [f64; 3],
    /// Finite-difference intervals per separated equation.
    pub grid: usize,
    pub lowest_k: usize,
    pub tol: f64,
    /// Bessel-series check at the degenerate point.
    pub bessel_q: u32,
    pub bessel_z: f64,
    pub bessel_terms: usize,
    pub mode: ExecMode,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            k: [0.5, 1.0 / 3.0, 0.25],
            grid: 2048,
            lowest_k: LOWEST_K,
            tol: FD_REALITY_TOL,
            bessel_q: 1,
            bessel_z: 0.5,
            bessel_terms: 30,
            mode: ExecMode::default(),
        }
    }
}

/// `λ²` values `start, start+step, …` up to `stop` (inclusive within
/// rounding), each rounded to 12 decimals.
pub fn scan_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, SpectralError> {
    if !(step > 0.0) || !(start.is_finite() && stop.is_finite()) || stop < start {
        return Err(SpectralError::InvalidParameter(format!("bad grid {start}:{stop}:{step}")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| ((start + step * i as f64) * 1e12).round() / 1e12).collect())
}

/// One report per `λ²` in input order; per-point failures become notes.
pub fn pt_phase_scan(config: &ScanConfig, lambda2: &[f64]) -> Vec<SpectrumReport> {
    par::map(config.mode, lambda2, |&l2| scan_point(config, l2))
}

fn scan_params(config: &ScanConfig, l2: f64) -> Vec<(String, String)> {
    params(&[
        ("lambda2", l2.to_string()),
        ("k1", config.k[0].to_string()),
        ("k2", config.k[1].to_string()),
        ("k3", config.k[2].to_string()),
    ])
}

fn scan_point(config: &ScanConfig, l2: f64) -> SpectrumReport {
    if (l2 - 0.5).abs() <= DEGENERATE_TOL {
        return degenerate_point(config, l2);
    }
    let cm = coupling_maps(&ModelParams::Sphere { lambda2: l2, k: config.k.map(C::from) });
    let ell = cm.ell.expect("lambda2 != 1/2");
    match separated_spectrum(config, ell) {
        Ok((values, closed)) => {
            let mut rep = SpectrumReport::new("lambda", scan_params(config, l2), config.grid, values, config.lowest_k, config.tol);
            rep.notes.push(format!("couplings: {cm}"));
            if cm.is_real() {
                rep.matches = rep
                    .lowest()
                    .iter()
                    .zip(&closed)
                    .enumerate()
                    .map(|(i, (&e, (v, label)))| ClosedFormMatch::new(i, e, *v, label.clone()))
                    .collect();
                rep
            } else {
                rep.with_label(PhaseLabel::ComplexCoupling)
            }
        }
        Err(e) => {
            let mut rep = SpectrumReport::new("lambda", scan_params(config, l2), config.grid, Vec::new(), config.lowest_k, config.tol);
            rep.notes.push(format!("couplings: {cm}"));
            rep.notes.push(format!("solve failed: {e}"));
            let label = if cm.is_real() { PhaseLabel::Broken } else { PhaseLabel::ComplexCoupling };
            rep.with_label(label)
        }
    }
}

type Closed = Vec<(f64, String)>;

/// Φ-equation levels give `M_m = √E_Φ`; each feeds a χ-equation solve. The
/// union of the lowest levels is returned with the closed-form `X(X+1)`,
/// `X = M + ℓ₃ + 2j`, `M = ℓ₁+ℓ₂+2m`, sorted.
fn separated_spectrum(config: &ScanConfig, ell: [C; 3]) -> Result<(Vec<C>, Closed), SpectralError> {
    let k = config.lowest_k;
    let phi = fd_spectrum(ell[1], ell[0], config.grid)?;
    let mut values = Vec::with_capacity(k * k);
    for e_phi in phi.iter().take(k) {
        let big_m = e_phi.sqrt();
        let chi = fd_spectrum(big_m + 0.5, ell[2], config.grid)?;
        values.extend(chi.into_iter().take(k).map(|e| e - 0.25));
    }
    let mut closed = Vec::new();
    for m in 0..k {
        for j in 0..k {
            let x = (ell[0] + ell[1]).re + 2.0 * m as f64 + ell[2].re + 2.0 * j as f64;
            closed.push((x * (x + 1.0), format!("X(X+1), X = M + l3 + 2j, m = {m}, j = {j}")));
        }
    }
    closed.sort_by(|a, b| a.0.total_cmp(&b.0));
    closed.truncate(k);
    Ok((values, closed))
}

fn degenerate_point(config: &ScanConfig, l2: f64) -> SpectrumReport {
    let [k1, k2, k3] = config.k;
    let alpha2 = 4.0 * k1 * k1 + 4.0 * k2 * k2 - 2.0 * k3 * k3;
    let alpha = C::from(alpha2).sqrt();
    let mut rep = SpectrumReport::new("lambda", scan_params(config, l2), 0, Vec::new(), config.lowest_k, config.tol).with_label(PhaseLabel::Degenerate);
    rep.notes.push(format!("alpha^2 = 4k1^2 + 4k2^2 - 2k3^2 = {alpha2}"));
    match bessel_ode_residual(alpha, config.bessel_q, C::from(config.bessel_z), config.bessel_terms) {
        Ok(r) => {
            rep.residual = Some(r);
            rep.notes.push(format!(
                "bessel residual at alpha = {}, q = {}, z = {}, {} terms",
                fmt_c(alpha),
                config.bessel_q,
                config.bessel_z,
                config.bessel_terms
            ));
        }
        Err(e) => rep.notes.push(format!("bessel check failed: {e}")),
    }
    rep
}
