use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use lie_algebra::EnvElement;
use masa::{catalog_masa, CatalogName, MasaParams, MasaSpec};
use numeric_core::{rat, Scalar};
use phase_space::{PhasePoly, PhaseRational};

use crate::coords::LambdaConstants;
use crate::system::build_potential;
use crate::ReductionError;

/// A named integral of a catalog model.
///
/// `reduced` is the closed phase-space form and `element` an enveloping
/// element projecting onto it. When the printed form of either differs from
/// the one that actually holds, the printed version is kept alongside.
#[derive(Clone, Debug)]
pub struct Integral {
    pub name: String,
    pub element: Option<EnvElement>,
    pub reduced: PhaseRational,
    pub printed: Option<PhaseRational>,
    pub printed_element: Option<EnvElement>,
}

impl Integral {
    fn new(name: &str, element: EnvElement, reduced: Ex) -> Self {
        Integral { name: name.into(), element: Some(element), reduced: reduced.0, printed: None, printed_element: None }
    }
}

/// Phase-space expression with by-value arithmetic, for writing closed forms.
#[derive(Clone)]
struct Ex(PhaseRational);

impl Add for Ex {
    type Output = Ex;
    fn add(self, o: Ex) -> Ex {
        Ex(&self.0 + &o.0)
    }
}

impl Sub for Ex {
    type Output = Ex;
    fn sub(self, o: Ex) -> Ex {
        Ex(&self.0 - &o.0)
    }
}

impl Mul for Ex {
    type Output = Ex;
    fn mul(self, o: Ex) -> Ex {
        Ex(&self.0 * &o.0)
    }
}

impl Neg for Ex {
    type Output = Ex;
    fn neg(self) -> Ex {
        Ex(-&self.0)
    }
}

impl Ex {
    fn sq(&self) -> Ex {
        Ex(self.0.pow(2))
    }

    fn pow(&self, e: u32) -> Ex {
        Ex(self.0.pow(e))
    }

    fn over(&self, d: &Ex) -> Result<Ex, ReductionError> {
        Ok(Ex(self.0.checked_div(&d.0)?))
    }

    fn scale(&self, c: &Scalar) -> Ex {
        Ex(self.0.scale(c))
    }
}

/// One-based variables and constants of the n-dimensional phase space.
struct Vars(usize);

impl Vars {
    fn s(&self, i: usize) -> Ex {
        Ex(PhasePoly::s(self.0, i - 1).into())
    }

    fn k(&self, i: usize) -> Ex {
        Ex(PhasePoly::k(self.0, i - 1).into())
    }

    fn l(&self, i: usize) -> Ex {
        Ex(PhasePoly::angular_momentum(i - 1).into())
    }

    fn c(&self, c: Scalar) -> Ex {
        Ex(PhaseRational::constant(self.0, c))
    }

    fn q(&self, n: i64, d: i64) -> Ex {
        self.c(Scalar::from_ratio(n, d))
    }

    fn pp(&self) -> Ex {
        Ex(PhasePoly::p_dot_p(self.0).into())
    }
}

fn x(i: usize) -> EnvElement {
    EnvElement::generator(i)
}

fn lin(terms: &[(usize, Scalar)]) -> EnvElement {
    EnvElement::linear(terms)
}

fn sq(e: &EnvElement) -> Result<EnvElement, ReductionError> {
    Ok(e.checked_mul(e)?)
}

fn anti(a: &EnvElement, b: &EnvElement) -> Result<EnvElement, ReductionError> {
    Ok(a.anticommutator(b)?)
}

fn sum(parts: &[EnvElement]) -> EnvElement {
    parts.iter().fold(EnvElement::zero(), |acc, e| &acc + e)
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn frac(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

fn i_times(c: &Scalar) -> Scalar {
    &Scalar::i() * c
}

fn z(masa: &MasaSpec, mu: usize) -> EnvElement {
    lin(&masa.generator_terms(mu))
}

/// The named integrals of a catalog model. `params` are the family
/// parameters the model is built with.
pub fn integrals_catalog(name: &str, params: &MasaParams) -> Result<Vec<Integral>, ReductionError> {
    let cat: CatalogName = name.parse()?;
    let masa = catalog_masa(name, params)?;
    match cat {
        CatalogName::Su2ab => su2ab(&masa),
        CatalogName::Lambda => lambda(&masa, params),
        CatalogName::CartanOd => cartan_od(params),
        CatalogName::Nilpotent => nilpotent(),
        CatalogName::DegeneratePlus => Ok(vec![degenerate(1)]),
        CatalogName::DegenerateMinus => Ok(vec![degenerate(-1)]),
    }
}

fn su2ab(masa: &MasaSpec) -> Result<Vec<Integral>, ReductionError> {
    let v = Vars(2);
    let h = v.pp() + Ex(build_potential(masa)?);
    let casimir = sum(&[sq(&x(1))?, sq(&x(2))?, sq(&x(3))?]);
    Ok(vec![Integral::new("H", casimir, h)])
}

fn lambda(masa: &MasaSpec, params: &MasaParams) -> Result<Vec<Integral>, ReductionError> {
    let l2 = params.lambda2.as_ref().ok_or(masa::MasaError::MissingParam("lambda2"))?;
    let c = LambdaConstants::new(l2)?;
    let v = Vars(3);
    let il = i_times(&c.lam);
    let l2s = Scalar::from_rational(c.lambda2.clone());
    let (lm, lp) = (&c.lm, &c.lp);

    let d1 = v.s(1).scale(lm) - v.s(2).scale(lp) + v.s(3).scale(&il);
    let d2 = v.s(1).scale(lp) - v.s(2).scale(lm) + v.s(3).scale(&il);
    let d3 = (v.s(1) - v.s(2)).scale(&il) - v.s(3);

    let t1 = (v.l(1).scale(lm) - v.l(2).scale(lp) + v.l(3).scale(&il)).sq()
        + (v.k(2) * d3.over(&d2)? + v.k(3) * d2.over(&d3)?).sq();
    let t2 = (v.l(1).scale(lp) - v.l(2).scale(lm) + v.l(3).scale(&il)).sq()
        + (v.k(1) * d3.over(&d1)? + v.k(3) * d1.over(&d3)?).sq();
    let t3 = (v.l(1).scale(&il) - v.l(2).scale(&il) - v.l(3)).sq()
        + (v.k(1) * d2.over(&d1)? + v.k(2) * d1.over(&d2)?).sq();

    let inv_d = c.d.inv()?;
    let two_l = &c.lam * &int(2);
    // [2λ(λ± X₁ + X₂) − λX₄ + i(λ² + λ±)X₆ − i(λ² + λ∓)X₈]²
    let bracket = |a: &Scalar, b: &Scalar| -> Result<EnvElement, ReductionError> {
        sq(&lin(&[
            (1, &two_l * a),
            (2, two_l.clone()),
            (4, -&c.lam),
            (6, i_times(&(&l2s + a))),
            (8, -&i_times(&(&l2s + b))),
        ]))
    };
    let z1z2z3 = |a: usize, b: usize| -> Result<EnvElement, ReductionError> {
        Ok(z(masa, a).checked_mul(&z(masa, b))?.scale(&int(4)))
    };
    let e1 = &(&sq(&lin(&[(7, lm.clone()), (5, lp.clone()), (3, il.clone())]))? - &bracket(lp, lm)?.scale(&inv_d))
        + &z1z2z3(1, 2)?;
    let e2 = &(&sq(&lin(&[(7, lp.clone()), (5, lm.clone()), (3, il.clone())]))? - &bracket(lm, lp)?.scale(&inv_d))
        + &z1z2z3(0, 2)?;
    let tail = sq(&lin(&[
        (1, l2s.clone()),
        (2, &l2s * &int(2)),
        (4, &l2s - &Scalar::one()),
        (6, il.clone()),
        (8, -&il),
    ]))?
    .scale(&inv_d);
    let e3 = &sq(&lin(&[(7, il.clone()), (5, il.clone()), (3, -Scalar::one())]))? + &tail;
    let e3_printed = &sq(&lin(&[(7, il.clone()), (2, il.clone()), (3, -Scalar::one())]))? + &tail;

    let mut third = Integral::new("T3", e3, t3);
    third.printed_element = Some(e3_printed);
    Ok(vec![Integral::new("T1", e1, t1), Integral::new("T2", e2, t2), third])
}

/// The displayed potential of the cartan_od family.
fn cartan_od_potential(v: &Vars, a: &Scalar, b: &Scalar) -> Result<Ex, ReductionError> {
    let (s1, s2, s3) = (v.s(1), v.s(2), v.s(3));
    let (k1, k2, k3) = (v.k(1), v.k(2), v.k(3));
    let ib = i_times(b);
    let m = &(a * a) - &(&(b * b) * &int(4));
    let q = (s2.clone() * s3.clone()).scale(a) - (s2.sq() - s3.sq()).scale(&ib);
    let num = (s2.sq() + s3.sq()) * (k2.sq() + k3.sq().scale(&m))
        - (k2 * k3).scale(&int(2)) * ((s2.sq() - s3.sq()).scale(a) + (s2 * s3).scale(&(&ib * &int(4))));
    Ok(k1.sq().over(&s1.sq())? + num.over(&q.sq().scale(&int(4)))?)
}

fn cartan_od(params: &MasaParams) -> Result<Vec<Integral>, ReductionError> {
    let a = params.a.clone().unwrap_or_else(Scalar::one);
    let b = params.b.clone().unwrap_or_else(Scalar::zero);
    let v = Vars(3);
    let (s1, s2, s3) = (v.s(1), v.s(2), v.s(3));
    let (k1, k2, k3) = (v.k(1), v.k(2), v.k(3));
    let ib = i_times(&b);
    let two_ib = &ib * &int(2);
    let m = &(&a * &a) - &(&(&b * &b) * &int(4));
    let pot = cartan_od_potential(&v, &a, &b)?;
    let k1s = k1.sq().over(&s1.sq())?;

    let t1 = v.l(2).sq() + v.l(3).sq() + k1s.clone() + s1.sq() * pot.clone()
        + (k3.clone() * k1.clone() - k1.sq()).scale(&int(2));
    let t2 = v.l(1).sq() + (v.q(1, 1) - s1.sq()) * (pot - k1s.clone());

    let q = (s2.clone() * s3.clone()).scale(&a) - (s2.sq() - s3.sq()).scale(&ib);
    let u = s3.scale(&a) - s2.scale(&two_ib);
    let f1 = k2.clone() * s3.clone() + k3.clone() * u.clone();
    let f2 = (k3.clone() * s3.clone()).scale(&m) + k2.clone() * u;
    let rest = s1.sq() * (f1 * f2).over(&q.sq().scale(&int(4)))?
        + k1s * s2.clone() * (s2.scale(&a) + s3.scale(&two_ib))
        + k1 * (k2 + k3.scale(&a));
    let l23 = v.l(2) * v.l(3);
    let t3 = v.l(3).sq().scale(&a) - l23.scale(&two_ib) + rest.clone();
    let t3_printed = v.l(3).sq().scale(&a) + l23.scale(&two_ib) + rest;

    let e1 = sum(&[sq(&x(3))?, sq(&x(4))?, sq(&x(5))?, sq(&x(6))?]);
    let e2 = sum(&[sq(&x(2))?, sq(&x(7))?, sq(&x(8))?]);
    let e3 = &(&sq(&x(3))? + &sq(&x(4))?).scale(&a) + &(&anti(&x(3), &x(5))? + &anti(&x(4), &x(6))?).scale(&ib);
    let mut third = Integral::new("T3", e3, t3);
    third.printed = Some(t3_printed.0);
    Ok(vec![Integral::new("T1", e1, t1), Integral::new("T2", e2, t2), third])
}

/// The displayed nilpotent potential, with `w = s₂ + i s₃`.
fn nilpotent_potential(v: &Vars) -> Result<Ex, ReductionError> {
    let w = v.s(2) + v.s(3).scale(&Scalar::i());
    let (k1, k2, k3) = (v.k(1), v.k(2), v.k(3));
    Ok(((k1 * k2.clone()).scale(&int(2)) + k3.sq()).over(&w.sq())?
        - (k2.clone() * k3 * v.s(1)).scale(&int(4)).over(&w.pow(3))?
        + (k2.sq() * (v.s(1).sq().scale(&int(4)) - v.q(1, 1))).over(&w.pow(4))?)
}

fn nilpotent() -> Result<Vec<Integral>, ReductionError> {
    let v = Vars(3);
    let i = Scalar::i();
    let w = v.s(2) + v.s(3).scale(&i);
    let (s1, s2) = (v.s(1), v.s(2));
    let (k1, k2, k3) = (v.k(1), v.k(2), v.k(3));
    let vn = nilpotent_potential(&v)?;
    let lp = v.l(2) + v.l(3).scale(&i);

    let t1 = v.l(1).sq() + v.l(3).sq().scale(&int(2)) - (v.l(2) * v.l(3)).scale(&(&i * &int(2)))
        + vn.clone()
        + k2.sq().scale(&int(4)).over(&w.sq())?
        - (k2.clone() * (s1.clone() * k3.clone() + (s2 * k2.clone()).scale(&int(2)))).scale(&int(4)).over(&w)?
        + (k1.sq() + (k1.clone() * k2.clone()).scale(&int(4)) + k2.sq().scale(&int(14))).scale(&frac(1, 3));
    let t2 = lp.sq() - (s1.clone() * k2.clone() * (k2.clone() * s1.clone() - k3.clone() * w.clone())).scale(&int(4)).over(&w.sq())?
        - (k1.clone() * k2.clone()).scale(&frac(4, 3));
    let t3 = lp * v.l(1) - s1.clone() * w.clone() * vn + (s1 * k2.sq()).over(&w.pow(3))?
        - (k2.clone() * k3.clone()).over(&w.sq())?
        + (k3 * (k1 + k2.scale(&int(3)))).scale(&frac(1, 3));

    let e1 = sum(&[
        sq(&x(1))?.scale(&frac(4, 3)),
        sq(&x(2))?.scale(&frac(2, 3)),
        sq(&x(3))?.scale(&int(2)),
        sq(&x(4))?,
        sq(&x(6))?,
        sq(&x(7))?,
        sq(&x(8))?.scale(&frac(1, 3)),
        anti(&x(3), &x(5))?.scale(&i),
        anti(&x(1), &lin(&[(2, int(1)), (8, &i * &int(2))]))?.scale(&frac(-2, 3)),
    ]);
    let e2 = &(-&sq(&lin(&[(3, int(1)), (5, i.clone())]))?)
        + &anti(&lin(&[(1, int(2)), (2, int(1))]), &lin(&[(2, int(1)), (8, i.clone())]))?.scale(&frac(2, 3));
    let e3 = sum(&[
        anti(&lin(&[(1, int(2)), (2, int(1))]), &x(4))?.scale(&frac(-1, 6)),
        anti(&lin(&[(1, int(2)), (2, int(-5)), (8, &i * &int(-6))]), &x(6))?.scale(&(&i * &frac(-1, 6))),
        anti(&lin(&[(3, i.clone()), (5, int(-1))]), &x(7))?.scale(&frac(1, 2)),
    ]);
    Ok(vec![Integral::new("T1", e1, t1), Integral::new("T2", e2, t2), Integral::new("T3", e3, t3)])
}

fn degenerate(sign: i64) -> Integral {
    let v = Vars(3);
    let r2 = Scalar::sqrt_rational(&rat(2, 1)).expect("2 is a small radicand");
    let c = &i_times(&r2) * &int(sign);
    let t = v.l(1) - v.l(2) + v.l(3).scale(&c);
    // X̂₇ = −L₁, X̂₅ = L₂, X̂₃ = −L₃
    let e = lin(&[(7, int(-1)), (5, int(-1)), (3, -&c)]);
    Integral::new("T", e, t)
}

/// The closed-form potential printed for a three-dimensional catalog model.
pub fn displayed_potential(name: CatalogName, params: &MasaParams) -> Result<Option<PhaseRational>, ReductionError> {
    let v = Vars(3);
    Ok(match name {
        CatalogName::CartanOd => {
            let a = params.a.clone().unwrap_or_else(Scalar::one);
            let b = params.b.clone().unwrap_or_else(Scalar::zero);
            Some(cartan_od_potential(&v, &a, &b)?.0)
        }
        CatalogName::Nilpotent => Some(nilpotent_potential(&v)?.0),
        CatalogName::Lambda => {
            let l2 = params.lambda2.as_ref().ok_or(masa::MasaError::MissingParam("lambda2"))?;
            let c = LambdaConstants::new(l2)?;
            let il = i_times(&c.lam);
            let d1 = v.s(1).scale(&c.lm) - v.s(2).scale(&c.lp) + v.s(3).scale(&il);
            let d2 = v.s(1).scale(&c.lp) - v.s(2).scale(&c.lm) + v.s(3).scale(&il);
            let d3 = (v.s(1) - v.s(2)).scale(&il) - v.s(3);
            Some((v.k(1).sq().over(&d1.sq())? + v.k(2).sq().over(&d2.sq())? + v.k(3).sq().over(&d3.sq())?).0)
        }
        _ => None,
    })
}

/// `p·p + α²/D²` with `D = s₁ − s₂ ± i√2 s₃` and `α² = 4k₁² + 4k₂² − 2k₃²`: the
/// collapsed λ² = ½ Hamiltonian, on which `L₁ − L₂ ± i√2 L₃` is conserved.
pub fn degenerate_hamiltonian(sign: i8) -> Result<PhaseRational, ReductionError> {
    let v = Vars(3);
    let r2 = Scalar::sqrt_rational(&rat(2, 1))?;
    let d = v.s(1) - v.s(2) + v.s(3).scale(&(&i_times(&r2) * &int(sign.signum() as i64)));
    let alpha2 = (v.k(1).sq() + v.k(2).sq()).scale(&int(4)) - v.k(3).sq().scale(&int(2));
    Ok((v.pp() + alpha2.over(&d.sq())?).0)
}
