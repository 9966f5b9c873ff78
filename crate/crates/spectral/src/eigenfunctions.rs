use crate::special::hyp2f1_terminating;
use crate::{fmt_c, SpectralError, C};

const PARITY_TOL: f64 = 1e-10;
const INTEGER_TOL: f64 = 1e-12;

/// The variable an eigenfunction is written in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    /// `ξ(φ)` with `cos2ξ = (a cos2φ + ib sin2φ)/√(a²−b²)`.
    CircleXi { a: f64, b: f64 },
    /// `ξ` of the sphere coordinates at `λ²`.
    SphereXi { lambda2: f64 },
    /// `χ` of the sphere coordinates at `λ²`.
    SphereChi { lambda2: f64 },
}

/// `c₁`-type or `c₂`-type solution (`c₃`/`c₄` for the χ-equation).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    First,
    Second,
}

/// `(sinθ)^p (cosθ)^q ₂F₁(−n, b; c; cos²θ)` with integer exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenfunction {
    pub label: String,
    pub sin_exp: f64,
    pub cos_exp: f64,
    /// First hypergeometric parameter, `−n`.
    pub f_a: f64,
    pub f_b: f64,
    pub f_c: f64,
    pub angle: Angle,
    pub energy: f64,
}

fn as_int(label: &str, x: f64) -> Result<i64, SpectralError> {
    let r = x.round();
    if (x - r).abs() > INTEGER_TOL {
        return Err(SpectralError::MultiValuedConfiguration(format!("{label} = {x}")));
    }
    Ok(r as i64)
}

impl Eigenfunction {
    /// Circle state with exponents `ĝ₋ = g₋`, `ĝ₊ = g₊` (first) or `1 − g₊`
    /// (second), `E = (2n + g₋ + g₊)²`; the second branch needs half-integer `n`.
    pub fn circle(g_minus: f64, g_plus: f64, branch: Branch, n: f64, a: f64, b: f64) -> Self {
        let angle = Angle::CircleXi { a, b };
        let energy = (2.0 * n + g_minus + g_plus).powi(2);
        match branch {
            Branch::First => Eigenfunction {
                label: format!("circle c1 n={n}"),
                sin_exp: g_minus,
                cos_exp: g_plus,
                f_a: -n,
                f_b: g_minus + g_plus + n,
                f_c: 0.5 + g_plus,
                angle,
                energy,
            },
            Branch::Second => Eigenfunction {
                label: format!("circle c2 n={n}"),
                sin_exp: g_minus,
                cos_exp: 1.0 - g_plus,
                f_a: 0.5 - n - g_plus,
                f_b: 0.5 + n + g_minus,
                f_c: 1.5 - g_plus,
                angle,
                energy,
            },
        }
    }

    /// Circle state with arbitrary branch exponents `(ĝ₋, ĝ₊)` and terminating
    /// index `n`: `E = (2n + ĝ₋ + ĝ₊)²`.
    pub fn circle_exponents(e_minus: f64, e_plus: f64, n: u32, a: f64, b: f64) -> Self {
        let nf = n as f64;
        Eigenfunction {
            label: format!("circle exponents ({e_minus}, {e_plus}) n={n}"),
            sin_exp: e_minus,
            cos_exp: e_plus,
            f_a: -nf,
            f_b: e_minus + e_plus + nf,
            f_c: 0.5 + e_plus,
            angle: Angle::CircleXi { a, b },
            energy: (2.0 * nf + e_minus + e_plus).powi(2),
        }
    }

    /// `Φ_m(ξ)`, energy `(ℓ₁ + ℓ₂ + 2m)²` of the Φ-equation.
    pub fn phi(ell1: f64, ell2: f64, m: f64, branch: Branch, lambda2: f64) -> Self {
        let angle = Angle::SphereXi { lambda2 };
        let energy = (ell1 + ell2 + 2.0 * m).powi(2);
        match branch {
            Branch::First => Eigenfunction {
                label: format!("Phi c1 m={m}"),
                sin_exp: ell2,
                cos_exp: ell1,
                f_a: -m,
                f_b: ell1 + ell2 + m,
                f_c: 0.5 + ell1,
                angle,
                energy,
            },
            Branch::Second => Eigenfunction {
                label: format!("Phi c2 m={m}"),
                sin_exp: ell2,
                cos_exp: 1.0 - ell1,
                f_a: 0.5 - m - ell1,
                f_b: 0.5 + m + ell2,
                f_c: 1.5 - ell1,
                angle,
                energy,
            },
        }
    }

    /// `Ψ_{m,n}(χ)` as displayed (`c₃` or `c₄`), energy `E_{n,m}`.
    pub fn psi(ell: [f64; 3], m: f64, n: f64, branch: Branch, lambda2: f64) -> Self {
        let big_m = ell[0] + ell[1] + 2.0 * m;
        let angle = Angle::SphereChi { lambda2 };
        let energy = crate::couplings::sphere_energy(ell, n, m);
        match branch {
            Branch::First => Eigenfunction {
                label: format!("Psi c3 m={m} n={n}"),
                sin_exp: -big_m,
                cos_exp: ell[2],
                f_a: -n,
                f_b: 0.5 - big_m + ell[2] + n,
                f_c: 0.5 + ell[2],
                angle,
                energy,
            },
            Branch::Second => Eigenfunction {
                label: format!("Psi c4 m={m} n={n}"),
                sin_exp: -big_m,
                cos_exp: 1.0 - ell[2],
                f_a: 0.5 - n - ell[2],
                f_b: 1.0 - big_m + n,
                f_c: 1.5 - ell[2],
                angle,
                energy,
            },
        }
    }

    /// The Dirichlet χ-state `(sinχ)^M (cosχ)^{ℓ₃} ₂F₁(−j, M+ℓ₃+1/2+j; ℓ₃+1/2; cos²χ)`,
    /// energy `X(X+1)` with `X = M + ℓ₃ + 2j`.
    pub fn psi_dirichlet(ell: [f64; 3], m: f64, j: u32, lambda2: f64) -> Self {
        let big_m = ell[0] + ell[1] + 2.0 * m;
        let jf = j as f64;
        let x = big_m + ell[2] + 2.0 * jf;
        Eigenfunction {
            label: format!("Psi dirichlet m={m} j={j}"),
            sin_exp: big_m,
            cos_exp: ell[2],
            f_a: -jf,
            f_b: big_m + ell[2] + 0.5 + jf,
            f_c: 0.5 + ell[2],
            angle: Angle::SphereChi { lambda2 },
            energy: x * (x + 1.0),
        }
    }

    fn check(&self) -> Result<(i64, i64, i64), SpectralError> {
        let p = as_int("sin exponent", self.sin_exp)?;
        let q = as_int("cos exponent", self.cos_exp)?;
        let r = self.f_a.round();
        if (self.f_a - r).abs() > INTEGER_TOL || r > 0.0 {
            return Err(SpectralError::NonTerminating(self.f_a.to_string()));
        }
        Ok((p, q, r as i64))
    }

    /// Value from `(cosθ, sinθ)`.
    pub fn eval_trig(&self, cos: C, sin: C) -> Result<C, SpectralError> {
        let (p, q, a) = self.check()?;
        let f = hyp2f1_terminating(a, C::from(self.f_b), C::from(self.f_c), cos * cos)?;
        Ok(sin.powi(p as i32) * cos.powi(q as i32) * f)
    }
}

pub fn eigenfunction_eval(f: &Eigenfunction, theta: C) -> Result<C, SpectralError> {
    f.eval_trig(theta.cos(), theta.sin())
}

fn half_angle(cos2: C) -> (C, C) {
    (((C::from(1.0) + cos2) * 0.5).sqrt(), ((C::from(1.0) - cos2) * 0.5).sqrt())
}

/// `[D₁, D₂, D₃]` and `√(1−2λ²)` at a real point of the sphere.
fn sphere_denominators(lambda2: f64, s: [f64; 3]) -> ([C; 3], C) {
    let d = C::from(1.0 - 2.0 * lambda2);
    let r = d.sqrt();
    let lam = C::from(lambda2).sqrt();
    let (lm, lp) = ((C::from(1.0) - r) * 0.5, (C::from(1.0) + r) * 0.5);
    let il = C::i() * lam;
    let dd = [lm * s[0] - lp * s[1] + il * s[2], lp * s[0] - lm * s[1] + il * s[2], il * (s[0] - s[1]) - s[2]];
    (dd, r)
}

/// `(cosθ, sinθ)` of the eigenfunction variable at one sample point.
fn trig_at(angle: &Angle, point: &[f64]) -> (C, C) {
    match *angle {
        Angle::CircleXi { a, b } => {
            let phi = point[0];
            let c = C::from(a * a - b * b).sqrt();
            let cos2 = (C::from(a * (2.0 * phi).cos()) + C::i() * b * (2.0 * phi).sin()) / c;
            half_angle(cos2)
        }
        Angle::SphereXi { lambda2 } | Angle::SphereChi { lambda2 } => {
            let ([d1, d2, d3], r) = sphere_denominators(lambda2, [point[0], point[1], point[2]]);
            let cos_chi = d3 / r;
            let sin_chi = (C::from(1.0) - cos_chi * cos_chi).sqrt();
            match angle {
                Angle::SphereChi { .. } => (cos_chi, sin_chi),
                _ => (d1 / (r * sin_chi), d2 / (r * sin_chi)),
            }
        }
    }
}

fn parity_image(angle: &Angle, point: &[f64]) -> Vec<f64> {
    match angle {
        Angle::CircleXi { .. } => vec![-point[0]],
        _ => vec![point[0], point[1], -point[2]],
    }
}

fn samples(angle: &Angle) -> Vec<Vec<f64>> {
    match angle {
        Angle::CircleXi { .. } => (0..8).map(|k| vec![0.21 + 0.37 * k as f64]).collect(),
        _ => (0..8)
            .map(|k| {
                let (t, p) = (0.4 + 0.29 * k as f64, 0.7 + 0.83 * k as f64);
                vec![t.sin() * p.cos(), t.sin() * p.sin(), t.cos()]
            })
            .collect(),
    }
}

/// `ε` with `conj ψ(𝒫x) = ε ψ(x)` at every sample point (`𝒫: φ → −φ` on
/// the circle, `s₃ → −s₃` on the sphere), or `NoDefiniteParity`.
pub fn pt_parity_check(f: &Eigenfunction) -> Result<i8, SpectralError> {
    let mut sign: Option<i8> = None;
    for x in samples(&f.angle) {
        let (c, s) = trig_at(&f.angle, &x);
        let v = f.eval_trig(c, s)?;
        if v.norm() < 1e-8 {
            continue;
        }
        let (cp, sp) = trig_at(&f.angle, &parity_image(&f.angle, &x));
        let ratio = f.eval_trig(cp, sp)?.conj() / v;
        let eps = if (ratio - 1.0).norm() <= PARITY_TOL {
            1
        } else if (ratio + 1.0).norm() <= PARITY_TOL {
            -1
        } else {
            return Err(SpectralError::NoDefiniteParity(fmt_c(ratio)));
        };
        match sign {
            Some(s0) if s0 != eps => return Err(SpectralError::NoDefiniteParity("sign changes between points".into())),
            _ => sign = Some(eps),
        }
    }
    sign.ok_or_else(|| SpectralError::NoDefiniteParity("eigenfunction vanishes at every sample".into()))
}
