use num_traits::{One, Zero};
use numeric_core::{rat, BigRational, CRat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::PhaseError;

/// Rational point with `s·s = 1` and `s·p = 0`, plus rational couplings `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintPoint {
    s: Vec<BigRational>,
    p: Vec<BigRational>,
    k: Vec<BigRational>,
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

impl ConstraintPoint {
    pub fn new(s: Vec<BigRational>, p: Vec<BigRational>, k: Vec<BigRational>) -> Result<Self, PhaseError> {
        let n = s.len();
        if p.len() != n || k.len() != n {
            return Err(PhaseError::DimensionMismatch { expected: n, found: p.len().max(k.len()) });
        }
        if dot(&s, &s) != BigRational::one() || !dot(&s, &p).is_zero() {
            return Err(PhaseError::OffConstraint);
        }
        Ok(ConstraintPoint { s, p, k })
    }

    /// Stereographic lift `s = (2u, |u|²−1)/(|u|²+1)` and projection
    /// `p = w − (w·s)s`.
    pub fn from_stereographic(u: &[BigRational], w: &[BigRational], k: Vec<BigRational>) -> Result<Self, PhaseError> {
        let n = u.len() + 1;
        if w.len() != n {
            return Err(PhaseError::DimensionMismatch { expected: n, found: w.len() });
        }
        let u2 = dot(u, u);
        let denom = &u2 + BigRational::one();
        let mut s: Vec<BigRational> = u.iter().map(|x| x * rat(2, 1) / &denom).collect();
        s.push((&u2 - BigRational::one()) / &denom);
        let ws = dot(w, &s);
        let p = w.iter().zip(&s).map(|(wi, si)| wi - &ws * si).collect();
        Self::new(s, p, k)
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[BigRational] {
        &self.s
    }

    pub fn p(&self) -> &[BigRational] {
        &self.p
    }

    pub fn k(&self) -> &[BigRational] {
        &self.k
    }

    /// Values in the `(s, p, k)` layout.
    pub fn values(&self) -> Vec<CRat> {
        self.s.iter().chain(&self.p).chain(&self.k).map(|x| CRat::real(x.clone())).collect()
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.s.iter().chain(&self.p).chain(&self.k).map(numeric_core::rat_to_f64).collect()
    }
}

/// Seeded source of constraint points; optionally with fixed couplings.
#[derive(Clone, Debug)]
pub struct ConstraintSampler {
    n: usize,
    rng: ChaCha8Rng,
    fixed_k: Option<Vec<BigRational>>,
    height: i64,
}

impl ConstraintSampler {
    pub fn new(n: usize, seed: u64) -> Self {
        ConstraintSampler { n, rng: ChaCha8Rng::seed_from_u64(seed), fixed_k: None, height: 12 }
    }

    pub fn with_fixed_k(mut self, k: Vec<BigRational>) -> Self {
        self.fixed_k = Some(k);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn rational(&mut self) -> BigRational {
        let num = self.rng.gen_range(-self.height..=self.height);
        let den = self.rng.gen_range(1..=self.height / 2);
        rat(num, den)
    }

    fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn next_point(&mut self) -> ConstraintPoint {
        let u: Vec<BigRational> = (0..self.n - 1).map(|_| self.rational()).collect();
        let w: Vec<BigRational> = (0..self.n).map(|_| self.rational()).collect();
        let k = match &self.fixed_k {
            Some(k) => k.clone(),
            None => (0..self.n).map(|_| self.nonzero_rational()).collect(),
        };
        ConstraintPoint::from_stereographic(&u, &w, k).expect("stereographic points satisfy the constraints")
    }
}

/// First point of the seeded stream.
pub fn sample_constraint_point(seed: u64, n: usize) -> Result<ConstraintPoint, PhaseError> {
    if n < 2 {
        return Err(PhaseError::DimensionMismatch { expected: 2, found: n });
    }
    Ok(ConstraintSampler::new(n, seed).next_point())
}
