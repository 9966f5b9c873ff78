use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::crat::{forward_owned, CRat};
use crate::NumericError;

/// Element of Q(i)(√m₁, √m₂, …): a sum of `c_m·√m` over squarefree `m ≥ 1`.
///
/// Terms are kept sorted by radicand with no zero coefficients, so structural
/// equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    terms: Vec<(u64, CRat)>,
}

fn squarefree_split(mut n: u64) -> (u64, u64) {
    // n = outer² · inner with inner squarefree
    let mut outer = 1u64;
    let mut inner = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        outer *= p.pow(e / 2);
        if e % 2 == 1 {
            inner *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    inner *= n;
    (outer, inner)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Scalar {
    pub fn from_crat(c: CRat) -> Self {
        if c.is_zero() {
            Scalar::zero()
        } else {
            Scalar { terms: vec![(1, c)] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_crat(CRat::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_crat(CRat::from_ratio(n, d))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_crat(CRat::real(r))
    }

    pub fn i() -> Self {
        Self::from_crat(CRat::i())
    }

    /// Principal square root of a rational; negative inputs give `i·√|q|`.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self, NumericError> {
        if q.is_zero() {
            return Ok(Scalar::zero());
        }
        let neg = q.is_negative();
        let q = q.abs();
        // √(n/d) = √(n·d)/d
        let nd = q.numer() * q.denom();
        let nd = nd.to_u64().ok_or(NumericError::RadicandTooLarge)?;
        let (outer, inner) = squarefree_split(nd);
        let coeff = BigRational::new(BigInt::from(outer), q.denom().clone());
        let c = if neg { CRat::new(BigRational::zero(), coeff) } else { CRat::real(coeff) };
        Ok(Scalar { terms: vec![(inner, c)] })
    }

    pub fn terms(&self) -> &[(u64, CRat)] {
        &self.terms
    }

    pub fn is_rational_crat(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == 1)
    }

    /// The Q(i) value when no radical is present.
    pub fn as_crat(&self) -> Option<CRat> {
        match self.terms.as_slice() {
            [] => Some(CRat::zero()),
            [(1, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn radicands(&self) -> Vec<u64> {
        self.terms.iter().map(|(m, _)| *m).filter(|&m| m != 1).collect()
    }

    fn push_term(&mut self, m: u64, c: CRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(k, _)| k.cmp(&m)) {
            Ok(pos) => {
                self.terms[pos].1 += &c;
                if self.terms[pos].1.is_zero() {
                    self.terms.remove(pos);
                }
            }
            Err(pos) => self.terms.insert(pos, (m, c)),
        }
    }

    /// Complex conjugation (radicals are real and positive).
    pub fn conj(&self) -> Self {
        Scalar { terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// Galois automorphism √p ↦ −√p.
    fn flip_prime(&self, p: u64) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| if m % p == 0 { (*m, -c) } else { (*m, c.clone()) })
                .collect(),
        }
    }

    pub fn inv(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        if let Some(c) = self.as_crat() {
            return Ok(Scalar::from_crat(c.inv()?));
        }
        let mut primes: Vec<u64> = self.radicands().into_iter().flat_map(prime_factors).collect();
        primes.sort_unstable();
        primes.dedup();
        let mut y = self.clone();
        let mut num = Scalar::one();
        for p in primes {
            let c = y.flip_prime(p);
            num = &num * &c;
            y = &y * &c;
        }
        let base = y.as_crat().expect("norm lies in Q(i)");
        Ok(num.scale_crat(&base.inv()?))
    }

    pub fn scale_crat(&self, c: &CRat) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_complex64() * (*m as f64).sqrt())
            .sum()
    }

    pub fn bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    /// Deterministic total order used for canonical "leading coefficient" choices.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let key = |s: &Scalar| -> Vec<(u64, String)> {
            s.terms.iter().map(|(m, c)| (*m, c.to_string())).collect()
        };
        key(self).cmp(&key(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| if *m == 1 { c.to_string() } else { format!("{}*sqrt({})", c, m) })
            .collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(" + "))
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.terms.is_empty() || o.terms.is_empty() {
            return Scalar::zero();
        }
        if let ([(1, a)], [(1, b)]) = (self.terms.as_slice(), o.terms.as_slice()) {
            return Scalar::from_crat(a * b);
        }
        let mut out = Scalar::zero();
        for (m, a) in &self.terms {
            for (n, b) in &o.terms {
                let g = m.gcd(n);
                let radicand = (m / g) * (n / g);
                let c = (a * b).scale(&BigRational::from_integer(BigInt::from(g)));
                out.push_term(radicand, c);
            }
        }
        out
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

forward_owned!(Scalar, Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        if let ([(1, a)], [(1, b)]) = (self.terms.as_mut_slice(), o.terms.as_slice()) {
            *a += b;
            if a.is_zero() {
                self.terms.clear();
            }
            return;
        }
        for (m, c) in &o.terms {
            self.push_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        for (m, c) in &o.terms {
            self.push_term(*m, -c);
        }
    }
}

impl From<CRat> for Scalar {
    fn from(c: CRat) -> Self {
        Scalar::from_crat(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}
