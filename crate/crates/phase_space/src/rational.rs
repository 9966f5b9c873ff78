use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use numeric_core::{CRat, Complex64, Scalar};

use crate::jet::Jet;
use crate::poly::PhasePoly;
use crate::PhaseError;

/// `num / Π fᵢ^eᵢ` with monic, non-constant, pairwise distinct factors `fᵢ`.
#[derive(Clone, PartialEq, Debug)]
pub struct PhaseRational {
    num: PhasePoly,
    den: Vec<(PhasePoly, u32)>,
}

/// Splits `d` into a constant and monic factors (one per variable of the
/// monomial content, plus the remaining cofactor).
fn split_denominator(d: &PhasePoly) -> Result<(Scalar, Vec<(PhasePoly, u32)>), PhaseError> {
    if d.is_zero() {
        return Err(PhaseError::DivisionByZero);
    }
    let n = d.n();
    let content = d.monomial_content();
    let rest = d.div_monomial(&content);
    let mut factors = Vec::new();
    for (idx, &e) in content.iter().enumerate() {
        if e > 0 {
            let mut v = vec![0u8; 3 * n];
            v[idx] = 1;
            let mut m = PhasePoly::zero(n);
            m.add_term(v, Scalar::one());
            factors.push((m, e as u32));
        }
    }
    let lead = rest.leading().map(|(_, c)| c.clone()).expect("nonzero");
    if rest.as_constant().is_none() {
        factors.push((rest.scale(&lead.inv()?), 1));
    }
    Ok((lead, factors))
}

fn merge_factor(den: &mut Vec<(PhasePoly, u32)>, f: PhasePoly, e: u32) {
    if let Some(slot) = den.iter_mut().find(|(g, _)| *g == f) {
        slot.1 += e;
    } else {
        den.push((f, e));
    }
}

impl PhaseRational {
    pub fn from_poly(p: PhasePoly) -> Self {
        PhaseRational { num: p, den: Vec::new() }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_poly(PhasePoly::zero(n))
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(PhasePoly::one(n))
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::from_poly(PhasePoly::constant(n, c))
    }

    pub fn new(num: PhasePoly, den: &PhasePoly) -> Result<Self, PhaseError> {
        let (c, factors) = split_denominator(den)?;
        let mut r = PhaseRational { num: num.scale(&c.inv()?), den: Vec::new() };
        for (f, e) in factors {
            merge_factor(&mut r.den, f, e);
        }
        r.sort();
        Ok(r)
    }

    fn sort(&mut self) {
        self.den.retain(|(_, e)| *e > 0);
        self.den.sort_by_cached_key(|(f, _)| (f.total_degree(), f.to_string()));
    }

    pub fn n(&self) -> usize {
        self.num.n()
    }

    pub fn num(&self) -> &PhasePoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(PhasePoly, u32)] {
        &self.den
    }

    /// The expanded denominator.
    pub fn den(&self) -> PhasePoly {
        self.den.iter().fold(PhasePoly::one(self.n()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&PhasePoly> {
        self.den.is_empty().then_some(&self.num)
    }

    /// p-degree, when the denominator does not involve momenta.
    pub fn p_degree(&self) -> Option<usize> {
        let n = self.n();
        let p_free = self.den.iter().all(|(f, _)| (n..2 * n).all(|i| !f.depends_on(i)));
        p_free.then(|| self.num.p_degree())
    }

    /// Bound on the total degree of numerator and denominator combined.
    pub fn degree_bound(&self) -> usize {
        self.num.total_degree() + self.den.iter().map(|(f, e)| f.total_degree() * *e as usize).sum::<usize>()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PhaseRational { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn conj(&self) -> Self {
        PhaseRational { num: self.num.conj(), den: self.den.iter().map(|(f, e)| (f.conj(), *e)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        PhaseRational { num: self.num.pow(e), den: self.den.iter().map(|(f, k)| (f.clone(), k * e)).collect() }
    }

    pub fn recip(&self) -> Result<Self, PhaseError> {
        let mut r = Self::new(self.den(), &self.num)?;
        r.sort();
        Ok(r)
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, PhaseError> {
        Ok(self * &o.recip()?)
    }

    /// `∂/∂x_idx` in the 3n-variable layout.
    pub fn derivative(&self, idx: usize) -> Self {
        let n = self.n();
        let (dep, indep): (Vec<_>, Vec<_>) = self.den.iter().cloned().partition(|(f, _)| f.depends_on(idx));
        let prod_dep = dep.iter().fold(PhasePoly::one(n), |acc, (f, _)| &acc * f);
        let mut num = &self.num.derivative(idx) * &prod_dep;
        for (i, (f, e)) in dep.iter().enumerate() {
            let others = dep.iter().enumerate().filter(|(j, _)| *j != i).fold(PhasePoly::one(n), |acc, (_, (g, _))| &acc * g);
            let term = &(&self.num * &f.derivative(idx)) * &others;
            num = &num - &term.scale(&Scalar::from_int(*e as i64));
        }
        let mut den = indep;
        den.extend(dep.into_iter().map(|(f, e)| (f, e + 1)));
        let mut r = PhaseRational { num, den };
        r.sort();
        r
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn normalize(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for (f, e) in &self.den {
            let mut left = *e;
            while left > 0 {
                match num.try_div_exact(f) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.push((f.clone(), left));
            }
        }
        if num.is_zero() {
            den.clear();
        }
        PhaseRational { num, den }
    }

    pub fn eval(&self, x: &[CRat]) -> Result<Scalar, PhaseError> {
        let mut d = Scalar::one();
        for (f, e) in &self.den {
            let v = f.eval(x);
            if v.is_zero() {
                return Err(PhaseError::Singular);
            }
            d = &d * &v.pow(*e);
        }
        Ok(&self.num.eval(x) * &d.inv()?)
    }

    pub fn eval_c64(&self, x: &[Complex64]) -> Complex64 {
        self.den.iter().fold(self.num.eval_c64(x), |acc, (f, e)| acc / f.eval_c64(x).powu(*e))
    }

    /// True when some denominator factor vanishes at `x`.
    pub fn is_singular_at(&self, x: &[CRat]) -> bool {
        self.den.iter().any(|(f, _)| f.eval(x).is_zero())
    }

    pub fn jet(&self, x: &[CRat], order: u8) -> Result<Jet, PhaseError> {
        let mut j = self.num.jet(x, order);
        for (f, e) in &self.den {
            let inv = f.jet(x, order).inv()?;
            j = j.mul(&inv.powi(*e));
        }
        Ok(j)
    }

    /// Exact symbolic equality.
    pub fn equals(&self, o: &Self) -> bool {
        (self - o).num.is_zero()
    }
}

impl From<PhasePoly> for PhaseRational {
    fn from(p: PhasePoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &PhaseRational {
    type Output = PhaseRational;
    fn add(self, o: &PhaseRational) -> PhaseRational {
        if o.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return o.clone();
        }
        let n = self.n();
        let mut lcm = self.den.clone();
        for (f, e) in &o.den {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => lcm.push((f.clone(), *e)),
            }
        }
        let lift = |r: &PhaseRational| -> PhasePoly {
            lcm.iter().fold(r.num.clone(), |acc, (f, e)| {
                let have = r.den.iter().find(|(g, _)| g == f).map_or(0, |(_, k)| *k);
                if have < *e {
                    &acc * &f.pow(e - have)
                } else {
                    acc
                }
            })
        };
        let num = &lift(self) + &lift(o);
        let mut r = PhaseRational { num, den: if lcm.is_empty() { Vec::new() } else { lcm } };
        if r.num.is_zero() {
            return PhaseRational::zero(n);
        }
        r.sort();
        r
    }
}

impl Sub for &PhaseRational {
    type Output = PhaseRational;
    fn sub(self, o: &PhaseRational) -> PhaseRational {
        self + &(-o)
    }
}

impl Neg for &PhaseRational {
    type Output = PhaseRational;
    fn neg(self) -> PhaseRational {
        PhaseRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &PhaseRational {
    type Output = PhaseRational;
    fn mul(self, o: &PhaseRational) -> PhaseRational {
        let num = &self.num * &o.num;
        if num.is_zero() {
            return PhaseRational::zero(self.n());
        }
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            merge_factor(&mut den, f.clone(), *e);
        }
        let mut r = PhaseRational { num, den };
        r.sort();
        r
    }
}

impl fmt::Display for PhaseRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(g, e)| if *e == 1 { format!("({g})") } else { format!("({g})^{e}") })
            .collect();
        write!(f, "({}) / ({})", self.num, den.join("*"))
    }
}
