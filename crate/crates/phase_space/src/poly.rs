use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use numeric_core::{CRat, Complex64, Scalar};

/// A phase-space coordinate: position `s_μ`, momentum `p_μ`, or coupling `k_μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    S(usize),
    P(usize),
    K(usize),
}

impl Var {
    /// Position in the layout `(s₁..s_n, p₁..p_n, k₁..k_n)`.
    pub fn index(self, n: usize) -> usize {
        match self {
            Var::S(i) => i,
            Var::P(i) => n + i,
            Var::K(i) => 2 * n + i,
        }
    }

    pub fn from_index(n: usize, idx: usize) -> Var {
        match idx / n {
            0 => Var::S(idx),
            1 => Var::P(idx - n),
            _ => Var::K(idx - 2 * n),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::S(i) => write!(f, "s{}", i + 1),
            Var::P(i) => write!(f, "p{}", i + 1),
            Var::K(i) => write!(f, "k{}", i + 1),
        }
    }
}

/// Polynomial in `s, p, k` over [`Scalar`], keyed by exponent vectors of length 3n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PhasePoly {
    n: usize,
    terms: BTreeMap<Vec<u8>, Scalar>,
}

impl PhasePoly {
    pub fn zero(n: usize) -> Self {
        PhasePoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; 3 * n], c);
        p
    }

    pub fn var(n: usize, v: Var) -> Self {
        let mut e = vec![0; 3 * n];
        e[v.index(n)] = 1;
        let mut p = Self::zero(n);
        p.add_term(e, Scalar::one());
        p
    }

    pub fn s(n: usize, i: usize) -> Self {
        Self::var(n, Var::S(i))
    }

    pub fn p(n: usize, i: usize) -> Self {
        Self::var(n, Var::P(i))
    }

    pub fn k(n: usize, i: usize) -> Self {
        Self::var(n, Var::K(i))
    }

    /// `Σ s_μ²`.
    pub fn s_dot_s(n: usize) -> Self {
        (0..n).fold(Self::zero(n), |acc, i| &acc + &Self::s(n, i).pow(2))
    }

    /// `Σ p_μ²`.
    pub fn p_dot_p(n: usize) -> Self {
        (0..n).fold(Self::zero(n), |acc, i| &acc + &Self::p(n, i).pow(2))
    }

    /// `Σ s_μ p_μ`.
    pub fn s_dot_p(n: usize) -> Self {
        (0..n).fold(Self::zero(n), |acc, i| &acc + &(&Self::s(n, i) * &Self::p(n, i)))
    }

    /// `C₁ = s·s − 1`.
    pub fn constraint_sphere(n: usize) -> Self {
        &Self::s_dot_s(n) - &Self::one(n)
    }

    /// `C₂ = s·p`.
    pub fn constraint_tangent(n: usize) -> Self {
        Self::s_dot_p(n)
    }

    /// `L_i = ε_ijk s_j p_k` on the 2-sphere.
    pub fn angular_momentum(i: usize) -> Self {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        &(&Self::s(3, j) * &Self::p(3, k)) - &(&Self::s(3, k) * &Self::p(3, j))
    }

    pub(crate) fn add_term(&mut self, e: Vec<u8>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        3 * self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    fn block_degree(&self, start: usize) -> usize {
        self.terms.keys().map(|e| e[start..start + self.n].iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    pub fn s_degree(&self) -> usize {
        self.block_degree(0)
    }

    /// Highest total degree in the momenta.
    pub fn p_degree(&self) -> usize {
        self.block_degree(self.n)
    }

    pub fn k_degree(&self) -> usize {
        self.block_degree(2 * self.n)
    }

    pub fn depends_on(&self, idx: usize) -> bool {
        self.terms.keys().any(|e| e[idx] > 0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn conj(&self) -> Self {
        PhasePoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// `∂/∂x_idx` in the 3n-variable layout.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[idx] -= 1;
            out.add_term(d, c * &Scalar::from_int(e[idx] as i64));
        }
        out
    }

    /// Exact value at a point given as 3n Gaussian rationals.
    pub fn eval(&self, x: &[CRat]) -> Scalar {
        let pows = power_table(x, self.max_exponents());
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut m = CRat::one();
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    m = &m * &pows[v][k as usize];
                }
            }
            acc += &c.scale_crat(&m);
        }
        acc
    }

    pub fn eval_c64(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().enumerate().fold(c.to_complex64(), |m, (v, &k)| if k > 0 { m * x[v].powu(k as u32) } else { m })
            })
            .sum()
    }

    pub(crate) fn max_exponents(&self) -> Vec<u8> {
        let mut m = vec![0u8; self.nvars()];
        for e in self.terms.keys() {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).max(b);
            }
        }
        m
    }

    /// Largest term in lexicographic exponent order.
    pub fn leading(&self) -> Option<(&[u8], &Scalar)> {
        self.terms.iter().next_back().map(|(e, c)| (e.as_slice(), c))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn try_div_exact(&self, d: &Self) -> Option<Self> {
        let (lt_e, lt_c) = d.leading()?;
        let lt_e = lt_e.to_vec();
        let lt_inv = lt_c.inv().ok()?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.n);
        while let Some((e, c)) = rem.leading() {
            if e.iter().zip(&lt_e).any(|(a, b)| a < b) {
                return None;
            }
            let shift: Vec<u8> = e.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
            let f = c * &lt_inv;
            let mut t = Self::zero(self.n);
            t.add_term(shift, f);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Component-wise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Vec<u8> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return vec![0; self.nvars()] };
        it.fold(first.clone(), |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn div_monomial(&self, m: &[u8]) -> Self {
        PhasePoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone())).collect(),
        }
    }

    /// Substitutes every variable by a polynomial (`images[idx]` for the idx-th variable).
    pub fn substitute(&self, images: &[PhasePoly]) -> Self {
        let n = images.first().map_or(self.n, |p| p.n);
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut m = Self::constant(n, c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    m = &m * &images[v].pow(k as u32);
                }
            }
            out = &out + &m;
        }
        out
    }
}

pub(crate) fn power_table(x: &[CRat], max: Vec<u8>) -> Vec<Vec<CRat>> {
    x.iter()
        .zip(max)
        .map(|(v, m)| {
            let mut row = Vec::with_capacity(m as usize + 1);
            row.push(CRat::one());
            for k in 1..=m as usize {
                let next = &row[k - 1] * v;
                row.push(next);
            }
            row
        })
        .collect()
}

impl Add for &PhasePoly {
    type Output = PhasePoly;
    fn add(self, o: &PhasePoly) -> PhasePoly {
        assert_eq!(self.n, o.n, "phase-space dimension mismatch");
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PhasePoly {
    type Output = PhasePoly;
    fn sub(self, o: &PhasePoly) -> PhasePoly {
        assert_eq!(self.n, o.n, "phase-space dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        PhasePoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &PhasePoly {
    type Output = PhasePoly;
    fn mul(self, o: &PhasePoly) -> PhasePoly {
        assert_eq!(self.n, o.n, "phase-space dimension mismatch");
        let mut out = PhasePoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    let name = Var::from_index(self.n, v);
                    if k == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl PhasePoly {
    /// Exact jet at a point given as 3n Gaussian rationals.
    pub fn jet(&self, x: &[CRat], order: u8) -> crate::Jet {
        let m = self.nvars();
        let pows = power_table(x, self.max_exponents());
        let mut val = Scalar::zero();
        let mut grad = if order >= 1 { vec![Scalar::zero(); m] } else { Vec::new() };
        let mut hess = if order >= 2 { vec![Scalar::zero(); m * m] } else { Vec::new() };
        let mut support: Vec<(usize, u8)> = Vec::new();
        for (e, c) in &self.terms {
            support.clear();
            support.extend(e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(v, &k)| (v, k)));
            // x_v^(e_v − d) for d = 0, 1, 2 (zero when the exponent would go negative)
            let pw = |v: usize, k: u8, d: u8| -> Option<&CRat> { (k >= d).then(|| &pows[v][(k - d) as usize]) };
            let decremented = |dec: &[(usize, u8)]| -> Option<CRat> {
                let mut acc = CRat::one();
                for &(v, k) in &support {
                    let d = dec.iter().find(|(w, _)| *w == v).map_or(0, |(_, d)| *d);
                    acc = &acc * pw(v, k, d)?;
                }
                Some(acc)
            };
            let mono = decremented(&[]).expect("no decrement");
            val += &c.scale_crat(&mono);
            if order >= 1 {
                for &(i, ki) in &support {
                    if let Some(t) = decremented(&[(i, 1)]) {
                        grad[i] += &c.scale_crat(&t.scale(&numeric_core::rat(ki as i64, 1)));
                    }
                }
            }
            if order >= 2 {
                for (a, &(i, ki)) in support.iter().enumerate() {
                    if ki >= 2 {
                        if let Some(t) = decremented(&[(i, 2)]) {
                            let f = numeric_core::rat((ki as i64) * (ki as i64 - 1), 1);
                            hess[i * m + i] += &c.scale_crat(&t.scale(&f));
                        }
                    }
                    for &(j, kj) in &support[a + 1..] {
                        if let Some(t) = decremented(&[(i, 1), (j, 1)]) {
                            let v = c.scale_crat(&t.scale(&numeric_core::rat(ki as i64 * kj as i64, 1)));
                            hess[i * m + j] += &v;
                            hess[j * m + i] += &v;
                        }
                    }
                }
            }
        }
        crate::Jet::from_parts(order, m, val, grad, hess)
    }
}
