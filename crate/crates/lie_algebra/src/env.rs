use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use numeric_core::{CMatrixExact, Scalar};

use crate::basis::GeneratorBasis;
use crate::{LieError, MAX_WORD_LEN};

/// A product `X_{w₀} X_{w₁} …` of generators; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: &[usize]) -> Result<Self, LieError> {
        if letters.len() > MAX_WORD_LEN {
            return Err(LieError::WordTooLong { len: letters.len(), max: MAX_WORD_LEN });
        }
        Ok(Word(letters.iter().map(|&l| l as u8).collect()))
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the universal enveloping algebra, a finite sum of words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EnvElement {
    terms: BTreeMap<Word, Scalar>,
}

impl EnvElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(Word(Vec::new()), c);
        e
    }

    pub fn generator(i: usize) -> Self {
        let mut e = Self::zero();
        e.add_term(Word(vec![i as u8]), Scalar::one());
        e
    }

    /// `Σ c_k X_k`.
    pub fn linear(coeffs: &[(usize, Scalar)]) -> Self {
        let mut e = Self::zero();
        for (k, c) in coeffs {
            e.add_term(Word(vec![*k as u8]), c.clone());
        }
        e
    }

    pub fn monomial(letters: &[usize], c: Scalar) -> Result<Self, LieError> {
        let mut e = Self::zero();
        e.add_term(Word::new(letters)?, c);
        Ok(e)
    }

    fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, letters: &[usize]) -> Scalar {
        Word::new(letters).ok().and_then(|w| self.terms.get(&w).cloned()).unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_ordered)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut e = Self::zero();
        for (w, v) in &self.terms {
            e.add_term(w.clone(), v * c);
        }
        e
    }

    /// Concatenation product, without reordering.
    pub fn checked_mul(&self, o: &Self) -> Result<Self, LieError> {
        let mut e = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let len = w1.len() + w2.len();
                if len > MAX_WORD_LEN {
                    return Err(LieError::WordTooLong { len, max: MAX_WORD_LEN });
                }
                let w = Word([w1.0.as_slice(), w2.0.as_slice()].concat());
                e.add_term(w, c1 * c2);
            }
        }
        Ok(e)
    }

    /// `AB + BA`, without reordering.
    pub fn anticommutator(&self, o: &Self) -> Result<Self, LieError> {
        Ok(&self.checked_mul(o)? + &o.checked_mul(self)?)
    }

    /// Image under the matrix realization of `basis`.
    pub fn to_matrix(&self, basis: &GeneratorBasis) -> Result<CMatrixExact, LieError> {
        let n = basis.n();
        let mut out = CMatrixExact::zeros(n, n);
        for (w, c) in &self.terms {
            let mut m = CMatrixExact::identity(n);
            for l in w.letters() {
                m = &m * basis.generator(l)?;
            }
            out = &out + &m.scale(c);
        }
        Ok(out)
    }
}

impl Add for &EnvElement {
    type Output = EnvElement;
    fn add(self, o: &EnvElement) -> EnvElement {
        let mut e = self.clone();
        for (w, c) in &o.terms {
            e.add_term(w.clone(), c.clone());
        }
        e
    }
}

impl Sub for &EnvElement {
    type Output = EnvElement;
    fn sub(self, o: &EnvElement) -> EnvElement {
        self + &(-o)
    }
}

impl Neg for &EnvElement {
    type Output = EnvElement;
    fn neg(self) -> EnvElement {
        EnvElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: String = w.letters().map(|l| format!("X{l}")).collect();
                if word.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{word}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which out-of-order adjacent pair is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RewriteOrder {
    #[default]
    Leftmost,
    Rightmost,
}

pub fn pbw_normal_form(e: &EnvElement, basis: &GeneratorBasis) -> Result<EnvElement, LieError> {
    pbw_normal_form_with(e, basis, RewriteOrder::Leftmost)
}

/// Rewrites `X_a X_b → X_b X_a + [X_a, X_b]` for `a > b` until every word is
/// non-decreasing.
pub fn pbw_normal_form_with(e: &EnvElement, basis: &GeneratorBasis, order: RewriteOrder) -> Result<EnvElement, LieError> {
    let dim = basis.dim();
    let mut out = EnvElement::zero();
    let mut stack: Vec<(Vec<u8>, Scalar)> = Vec::new();
    for (w, c) in &e.terms {
        if w.len() > MAX_WORD_LEN {
            return Err(LieError::WordTooLong { len: w.len(), max: MAX_WORD_LEN });
        }
        if let Some(l) = w.letters().find(|&l| l >= dim) {
            return Err(LieError::BadIndex { index: l, size: dim });
        }
        stack.push((w.0.clone(), c.clone()));
    }
    while let Some((w, c)) = stack.pop() {
        let mut descents = (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]);
        let pos = match order {
            RewriteOrder::Leftmost => descents.next(),
            RewriteOrder::Rightmost => descents.last(),
        };
        let Some(p) = pos else {
            out.add_term(Word(w), c);
            continue;
        };
        let (a, b) = (w[p] as usize, w[p + 1] as usize);
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        stack.push((swapped, c.clone()));
        for (k, s) in basis.bracket(a, b) {
            let shorter = [&w[..p], &[*k as u8], &w[p + 2..]].concat();
            stack.push((shorter, &c * s));
        }
    }
    Ok(out)
}

/// PBW normal form of `AB − BA`, expanded by the Leibniz rule so that no word
/// longer than `deg A + deg B − 1` is ever formed.
pub fn env_commutator(a: &EnvElement, b: &EnvElement, basis: &GeneratorBasis) -> Result<EnvElement, LieError> {
    let len = (a.degree() + b.degree()).saturating_sub(1);
    if len > MAX_WORD_LEN {
        return Err(LieError::WordTooLong { len, max: MAX_WORD_LEN });
    }
    let dim = basis.dim();
    let mut raw = EnvElement::zero();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            let c = ca * cb;
            for (i, &x) in wa.0.iter().enumerate() {
                for (j, &y) in wb.0.iter().enumerate() {
                    let (x, y) = (x as usize, y as usize);
                    if x >= dim || y >= dim {
                        return Err(LieError::BadIndex { index: x.max(y), size: dim });
                    }
                    for (k, s) in basis.bracket(x, y) {
                        let w = [&wb.0[..j], &wa.0[..i], &[*k as u8], &wa.0[i + 1..], &wb.0[j + 1..]].concat();
                        raw.add_term(Word(w), &c * s);
                    }
                }
            }
        }
    }
    pbw_normal_form(&raw, basis)
}

fn lin(coeffs: &[(usize, i64)]) -> EnvElement {
    EnvElement::linear(&coeffs.iter().map(|&(k, c)| (k, Scalar::from_int(c))).collect::<Vec<_>>())
}

fn sq(i: usize) -> EnvElement {
    EnvElement::monomial(&[i, i], Scalar::one()).expect("length 2")
}

fn casimir_u3_cubic() -> Result<EnvElement, LieError> {
    let word = |l: &[usize], c: i64| EnvElement::monomial(l, Scalar::from_int(c));
    let mut e = &(&(&word(&[8, 6, 4], 1)? + &word(&[7, 5, 4], 1)?) + &word(&[8, 5, 3], 1)?) - &word(&[7, 6, 3], 1)?;
    let cube = lin(&[(1, 1), (2, -1)]).checked_mul(&lin(&[(1, 2), (2, 1)]))?.checked_mul(&lin(&[(1, 1), (2, 2)]))?;
    e = &e + &cube.scale(&Scalar::from_ratio(4, 27));
    let sixth = Scalar::from_ratio(1, 6);
    e = &e + &lin(&[(1, 1), (2, 2)]).anticommutator(&(&sq(3) + &sq(4)))?.scale(&sixth);
    e = &e + &lin(&[(1, 1), (2, -1)]).anticommutator(&(&sq(5) + &sq(6)))?.scale(&sixth);
    e = &e - &lin(&[(1, 2), (2, 1)]).anticommutator(&(&sq(7) + &sq(8)))?.scale(&sixth);
    e = &e - &lin(&[(1, 1), (2, -1)]).scale(&Scalar::from_ratio(4, 3));
    Ok(e)
}

/// Quadratic Casimir of u(2) or u(3), cubic Casimir of u(3), in PBW normal form.
pub fn casimir_element(order: u32, basis: &GeneratorBasis) -> Result<EnvElement, LieError> {
    let raw = match (basis.n(), order) {
        (2, 2) => &(&sq(1) + &sq(2)) + &sq(3),
        (3, 2) => {
            let cartan = &(&sq(1) + &EnvElement::monomial(&[2, 1], Scalar::one())?) + &sq(2);
            let rest = (3..=8).fold(EnvElement::zero(), |acc, k| &acc + &sq(k));
            &cartan.scale(&Scalar::from_int(4)) + &rest.scale(&Scalar::from_int(3))
        }
        (3, 3) => casimir_u3_cubic()?,
        (n, order) => return Err(LieError::UnsupportedOrder { order, n }),
    };
    pbw_normal_form(&raw, basis)
}
