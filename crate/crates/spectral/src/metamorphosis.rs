use std::f64::consts::SQRT_2;

use crate::special::bessel_series_psi;
use crate::{SpectralError, C};

const RESIDUAL_TOL: f64 = 1e-9;
const SERIES_TERMS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MetamorphosisCase {
    /// `V = (k₂/a²)(2ak₁e^{2iφ} − k₂e^{4iφ})` against the radial oscillator.
    Morse { a: f64, k1: f64, k2: f64 },
    /// `Ĥ = −Δ + α²/(s₁−s₂±i√2s₃)²` against the Bessel-type equation, `E = q(q+1)`.
    Degenerate { sign: i8, alpha: f64, q: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetamorphosisReport {
    pub case: MetamorphosisCase,
    pub residual: f64,
    pub tol: f64,
    pub points: usize,
    pub details: Vec<(String, String)>,
}

pub fn metamorphosis_check(case: MetamorphosisCase) -> Result<MetamorphosisReport, SpectralError> {
    let (residual, points, details) = match case {
        MetamorphosisCase::Morse { a, k1, k2 } => morse(a, k1, k2)?,
        MetamorphosisCase::Degenerate { sign, alpha, q } => degenerate(sign, alpha, q)?,
    };
    if !(residual <= RESIDUAL_TOL) {
        return Err(SpectralError::ResidualTooLarge { residual, tol: RESIDUAL_TOL });
    }
    Ok(MetamorphosisReport { case, residual, tol: RESIDUAL_TOL, points, details })
}

type Outcome = (f64, usize, Vec<(String, String)>);

/// With `r = ρe^{iφ}` and `ψ = r^{−1/2} f(r)` one has
/// `(−∂φ² + V − E)ψ = −r^{3/2}(−f'' + g/r² f + ω²r² f − ℰ f)`,
/// `g = E − 1/4`, `ω = k₂/a`, `ℰ = ±2k₁k₂/a` for `ρ = 1, i`. Both sides are
/// evaluated for a sum of powers `f = Σ c_j r^{p_j}`.
fn morse(a: f64, k1: f64, k2: f64) -> Result<Outcome, SpectralError> {
    if a == 0.0 || !a.is_finite() {
        return Err(SpectralError::InvalidParameter("Morse case needs a != 0".into()));
    }
    let energy = 2.3;
    let g = energy - 0.25;
    let omega2 = (k2 / a).powi(2);
    let terms = [(C::new(1.0, 0.0), C::new(0.7, 0.0)), (C::new(-0.4, 0.9), C::new(1.9, 0.3)), (C::new(0.25, 0.0), C::new(3.1, 0.0))];
    let mut worst: f64 = 0.0;
    let mut points = 0;
    let mut e_script = Vec::new();
    for (rho, rho_name) in [(C::new(1.0, 0.0), "1"), (C::new(0.0, 1.0), "i")] {
        let rho2 = rho * rho;
        let curly = 2.0 * k1 * k2 / a / rho2;
        e_script.push((format!("E_osc(rho={rho_name})"), format!("{}", curly.re)));
        for j in 0..10 {
            let phi = -1.0 + 0.2 * j as f64 + 0.03;
            let log_r = rho.ln() + C::new(0.0, phi);
            let r = log_r.exp();
            let x = (C::new(0.0, 2.0 * phi)).exp();
            let v = (2.0 * a * k1 * x - k2 * x * x) * (k2 / (a * a));
            let mut lhs = C::from(0.0);
            let mut rhs_inner = C::from(0.0);
            let mut f_abs = 0.0;
            for &(c, p) in &terms {
                let s = p - 0.5;
                let psi = c * (s * log_r).exp();
                lhs += psi * (s * s) + (v - energy) * psi;
                let f = c * (p * log_r).exp();
                let f2 = c * p * (p - 1.0) * ((p - 2.0) * log_r).exp();
                rhs_inner += -f2 + f * (g / (r * r)) + f * (r * r) * (omega2 / (rho2 * rho2)) - f * curly;
                f_abs += psi.norm() * (1.0 + (v - energy).norm() + (s * s).norm());
            }
            let rhs = -(1.5 * log_r).exp() * rhs_inner;
            worst = worst.max((lhs - rhs).norm() / f_abs.max(1e-300));
            points += 1;
        }
    }
    let mut details = vec![("g".to_string(), format!("E - 1/4 = {g}")), ("omega".into(), format!("{}", k2 / a)), ("E".into(), energy.to_string())];
    details.extend(e_script);
    Ok((worst, points, details))
}

/// `F(s) = ψ(1/D)`, `D = n·s`, `n = (1, −1, ±i√2)`. On the sphere
/// `Δ F = (n·n − D²) f'' − 2D f'`; the residual of `ĤF = q(q+1)F` is taken
/// with `f' = −z²ψ'`, `f'' = z⁴ψ'' + 2z³ψ'` from the series.
fn degenerate(sign: i8, alpha: f64, q: u32) -> Result<Outcome, SpectralError> {
    if sign != 1 && sign != -1 {
        return Err(SpectralError::InvalidParameter(format!("sign must be +1 or -1, got {sign}")));
    }
    let n = [C::from(1.0), C::from(-1.0), C::new(0.0, sign as f64 * SQRT_2)];
    let nn: C = n.iter().map(|v| v * v).sum();
    let e = (q * (q + 1)) as f64;
    let alpha_c = C::from(alpha);
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for k in 0..20 {
        let (t, p) = (0.3 + 0.13 * k as f64, 0.5 + 0.71 * k as f64);
        let s = [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
        let d: C = n.iter().zip(s).map(|(v, x)| v * x).sum();
        if d.norm() < 0.2 {
            continue;
        }
        let z = d.inv();
        let b = bessel_series_psi(alpha_c, q, z, SERIES_TERMS)?;
        let f1 = -z * z * b.d1;
        let f2 = z.powi(4) * b.d2 + 2.0 * z.powi(3) * b.d1;
        let lap = (nn - d * d) * f2 - 2.0 * d * f1;
        let pot = b.value * alpha * alpha / (d * d);
        let res = -lap + pot - b.value * e;
        let scale = pot.norm().max((b.value * e).norm()).max(lap.norm()).max(1e-300);
        worst = worst.max(res.norm() / scale);
        points += 1;
    }
    let details = vec![
        ("n.n".to_string(), format!("{}", nn.norm())),
        ("E".into(), format!("q(q+1) = {e}")),
        ("alpha^2".into(), format!("{}", alpha * alpha)),
        ("series_terms".into(), SERIES_TERMS.to_string()),
    ];
    Ok((worst, points, details))
}
