use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::NumericError;

/// Exact Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl CRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        CRat { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    pub fn gauss(re: i64, im: i64) -> Self {
        CRat {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn i() -> Self {
        Self::gauss(0, 1)
    }

    pub fn conj(&self) -> Self {
        CRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Result<Self, NumericError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(CRat { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn mul_i(&self) -> Self {
        CRat { re: -self.im.clone(), im: self.re.clone() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CRat { re: &self.re * r, im: &self.im * r }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CRat::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Largest numerator/denominator bit length, a cheap size measure.
    pub fn bits(&self) -> u64 {
        [self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom()]
            .iter()
            .map(|x| x.bits())
            .max()
            .unwrap_or(0)
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // shift both parts into range
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift = (nb - db).clamp(-1000, 1000);
            let scaled = if shift >= 0 {
                r / BigRational::from_integer(BigInt::one() << (shift as usize))
            } else {
                r * BigRational::from_integer(BigInt::one() << ((-shift) as usize))
            };
            let approx = scaled.numer().to_f64().unwrap_or(f64::NAN)
                / scaled.denom().to_f64().unwrap_or(f64::NAN);
            if approx.is_finite() {
                approx * 2f64.powi(shift as i32)
            } else {
                // both parts enormous with ratio near 1
                let t = (scaled.numer() << 64usize) / scaled.denom();
                t.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32 - 64)
            }
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, NumericError> {
    let s = s.trim();
    let bad = || NumericError::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let whole = if ip.is_empty() { BigInt::zero() } else { BigInt::from_str(ip).map_err(|_| bad())? };
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = if fp.is_empty() { BigInt::zero() } else { BigInt::from_str(fp).map_err(|_| bad())? };
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let v = BigRational::new(whole * &den + frac, den);
        return Ok(if neg { -v } else { v });
    }
    Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FromStr for CRat {
    type Err = NumericError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(CRat::real(parse_rational(s)?))
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{}i)", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
            }
        }
    }
}

impl Zero for CRat {
    fn zero() -> Self {
        CRat { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CRat {
    fn one() -> Self {
        CRat::from_int(1)
    }
}

impl<'a> Add<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn add(self, o: &CRat) -> CRat {
        CRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn sub(self, o: &CRat) -> CRat {
        CRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn mul(self, o: &CRat) -> CRat {
        if self.im.is_zero() && o.im.is_zero() {
            return CRat::real(&self.re * &o.re);
        }
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn div(self, o: &CRat) -> CRat {
        self * &o.inv().expect("division by zero CRat")
    }
}

impl Neg for &CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &'a $t) -> $t { (&self).$m(o) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(CRat, Add add, Sub sub, Mul mul, Div div);

impl Neg for CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        -&self
    }
}

impl AddAssign<&CRat> for CRat {
    fn add_assign(&mut self, o: &CRat) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&CRat> for CRat {
    fn sub_assign(&mut self, o: &CRat) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&CRat> for CRat {
    fn mul_assign(&mut self, o: &CRat) {
        *self = &*self * o;
    }
}

impl From<i64> for CRat {
    fn from(n: i64) -> Self {
        CRat::from_int(n)
    }
}

impl From<BigRational> for CRat {
    fn from(r: BigRational) -> Self {
        CRat::real(r)
    }
}
