use crate::{fmt_c, SpectralError, C};

const REAL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum ModelParams {
    Circle { a: f64, b: f64, k1: C, k2: C },
    Sphere { lambda2: f64, k: [C; 3] },
}

/// `g_±` on the circle (`None` when `a² = b²`) or `ℓ_μ` on the sphere
/// (`None` at `λ² = 1/2`).
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingMap {
    pub inputs: ModelParams,
    pub g_minus: Option<C>,
    pub g_plus: Option<C>,
    pub ell: Option<[C; 3]>,
}

impl CouplingMap {
    fn values(&self) -> Vec<C> {
        let mut v: Vec<C> = self.g_minus.iter().chain(self.g_plus.iter()).copied().collect();
        if let Some(l) = self.ell {
            v.extend(l);
        }
        v
    }

    pub fn is_real(&self) -> bool {
        let v = self.values();
        !v.is_empty() && v.iter().all(|z| z.im.abs() <= REAL_TOL * z.norm().max(1.0))
    }

    pub fn ell_real(&self) -> Option<[f64; 3]> {
        match self.ell {
            Some(l) if self.is_real() => Some(l.map(|z| z.re)),
            _ => None,
        }
    }

    pub fn g_real(&self) -> Option<(f64, f64)> {
        match (self.g_minus, self.g_plus) {
            (Some(m), Some(p)) if self.is_real() => Some((m.re, p.re)),
            _ => None,
        }
    }
}

/// `g = (1 + √(1 + 4G))/2`, principal square root.
pub fn root_convention(big_g: C) -> C {
    (C::from(1.0) + (C::from(1.0) + big_g * 4.0).sqrt()) * 0.5
}

pub fn coupling_maps(params: &ModelParams) -> CouplingMap {
    match *params {
        ModelParams::Circle { a, b, k1, k2 } => {
            let d = C::from(a * a - b * b);
            let (g_minus, g_plus) = if d.norm() == 0.0 {
                (None, None)
            } else {
                let c = d.sqrt();
                let g = |sign: f64| root_convention((c * k1 + k2 * sign).powi(2) / (d * 4.0));
                (Some(g(-1.0)), Some(g(1.0)))
            };
            CouplingMap { inputs: params.clone(), g_minus, g_plus, ell: None }
        }
        ModelParams::Sphere { lambda2, k } => {
            let d = 1.0 - 2.0 * lambda2;
            let ell = (d != 0.0).then(|| k.map(|kk| root_convention(kk * kk / d)));
            CouplingMap { inputs: params.clone(), g_minus: None, g_plus: None, ell }
        }
    }
}

/// Couplings `(k₁, k₂)` with `√(a²−b²)k₁ ± k₂ = 2√(a²−b²)√(g_±(g_±−1))`.
pub fn circle_couplings_from_g(a: f64, b: f64, g_minus: f64, g_plus: f64) -> Result<(f64, f64), SpectralError> {
    let d = a * a - b * b;
    if d <= 0.0 {
        return Err(SpectralError::InvalidParameter(format!("need a² > b², got a = {a}, b = {b}")));
    }
    if g_minus < 1.0 || g_plus < 1.0 {
        return Err(SpectralError::BadCouplings(format!("g_- = {g_minus}, g_+ = {g_plus}")));
    }
    let c = d.sqrt();
    let sp = 2.0 * c * (g_plus * (g_plus - 1.0)).sqrt();
    let sm = 2.0 * c * (g_minus * (g_minus - 1.0)).sqrt();
    Ok(((sp + sm) / (2.0 * c), (sp - sm) / 2.0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EnergyModel {
    /// `E_n = (2n + g₋ + g₊)²`.
    Circle { g_minus: C, g_plus: C },
    /// `E_{n,m} = (ℓ₁+ℓ₂−ℓ₃+2m−2n−1)(ℓ₁+ℓ₂−ℓ₃+2m−2n)`.
    Sphere { ell: [C; 3] },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Level {
    pub n: f64,
    pub m: f64,
    pub energy: f64,
}

pub fn sphere_energy(ell: [f64; 3], n: f64, m: f64) -> f64 {
    let y = ell[0] + ell[1] - ell[2] + 2.0 * m - 2.0 * n;
    (y - 1.0) * y
}

fn real(z: C) -> Result<f64, SpectralError> {
    if z.im.abs() > REAL_TOL * z.norm().max(1.0) {
        return Err(SpectralError::ComplexCouplings);
    }
    Ok(z.re)
}

/// Closed-form energies over `n ∈ ns` (and `m ∈ ms` on the sphere).
pub fn closed_form_energies(model: &EnergyModel, ns: &[f64], ms: &[f64]) -> Result<Vec<Level>, SpectralError> {
    match *model {
        EnergyModel::Circle { g_minus, g_plus } => {
            let s = real(g_minus)? + real(g_plus)?;
            Ok(ns.iter().map(|&n| Level { n, m: 0.0, energy: (2.0 * n + s).powi(2) }).collect())
        }
        EnergyModel::Sphere { ell } => {
            let l = [real(ell[0])?, real(ell[1])?, real(ell[2])?];
            Ok(ms.iter().flat_map(|&m| ns.iter().map(move |&n| Level { n, m, energy: sphere_energy(l, n, m) })).collect())
        }
    }
}

/// Both solution families on the circle with every branch `ĝ ∈ {g, 1−g}`
/// and integer or half-integer `n ≤ n_max`: the sorted distinct values of
/// `(2n + ĝ₋ + ĝ₊)²` together with a label for each.
pub fn circle_level_union(g_minus: f64, g_plus: f64, n_max: usize) -> Vec<(f64, String)> {
    let mut out: Vec<(f64, String)> = Vec::new();
    for (gm, lm) in [(g_minus, "g-"), (1.0 - g_minus, "1-g-")] {
        for (gp, lp) in [(g_plus, "g+"), (1.0 - g_plus, "1-g+")] {
            for twice_n in 0..=2 * n_max {
                let n = twice_n as f64 / 2.0;
                let e = (2.0 * n + gm + gp).powi(2);
                if !out.iter().any(|(v, _)| (v - e).abs() <= 1e-12 * e.max(1.0)) {
                    out.push((e, format!("(2n + {lm} + {lp})^2, n = {n}")));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

impl std::fmt::Display for CouplingMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if let (Some(m), Some(p)) = (self.g_minus, self.g_plus) {
            parts.push(format!("g- = {}, g+ = {}", fmt_c(m), fmt_c(p)));
        }
        if let Some(l) = self.ell {
            parts.push(format!("l = ({}, {}, {})", fmt_c(l[0]), fmt_c(l[1]), fmt_c(l[2])));
        }
        f.write_str(&parts.join("; "))
    }
}
