use num_traits::Zero;
use numeric_core::{CMatrixExact, Scalar};

use lie_algebra::{build_generators, GeneratorBasis};

use crate::MasaError;

/// Matrix with exactly one ±1 per row and column; `entries[i] = (column, sign)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    entries: Vec<(usize, i8)>,
}

impl SignedPermutation {
    pub fn new(entries: Vec<(usize, i8)>) -> Result<Self, MasaError> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &(c, s) in &entries {
            if c >= n || seen[c] || (s != 1 && s != -1) {
                return Err(MasaError::InvalidParity);
            }
            seen[c] = true;
        }
        Ok(SignedPermutation { entries })
    }

    pub fn diagonal(signs: &[i8]) -> Result<Self, MasaError> {
        Self::new(signs.iter().copied().enumerate().collect())
    }

    /// From 1-based signed indices, e.g. `[1, 2, -3]` for diag(1, 1, −1).
    pub fn from_signed_indices(idx: &[i64]) -> Result<Self, MasaError> {
        let e = idx
            .iter()
            .map(|&k| {
                if k == 0 {
                    Err(MasaError::InvalidParity)
                } else {
                    Ok((k.unsigned_abs() as usize - 1, if k > 0 { 1 } else { -1 }))
                }
            })
            .collect::<Result<_, _>>()?;
        Self::new(e)
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, i8)] {
        &self.entries
    }

    pub fn to_matrix(&self) -> CMatrixExact {
        let n = self.n();
        let mut m = CMatrixExact::zeros(n, n);
        for (i, &(c, s)) in self.entries.iter().enumerate() {
            m.set(i, c, Scalar::from_int(s as i64));
        }
        m
    }

    /// `𝒫 = 𝒫ᵀ` (and so `𝒫 = 𝒫⁻¹`).
    pub fn is_involution(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &(c, s))| self.entries[c] == (i, s))
    }

    /// `𝒫 M 𝒫`.
    pub fn conjugate(&self, m: &CMatrixExact) -> CMatrixExact {
        let p = self.to_matrix();
        &(&p * m) * &p
    }
}

/// Commuting symmetric generators `Z_μ = Σ_ν c_μ^ν X_ν` over the symmetric
/// generators of u(n), with optional PT data.
#[derive(Clone, Debug, PartialEq)]
pub struct MasaSpec {
    n: usize,
    name: Option<String>,
    coeffs: Vec<Vec<Scalar>>,
    matrices: Vec<CMatrixExact>,
    parity: Option<SignedPermutation>,
    pt_sign: Option<Vec<i8>>,
}

/// Dense coefficient row from `(generator index, coefficient)` pairs.
pub fn sparse_row(n: usize, terms: &[(usize, Scalar)]) -> Result<Vec<Scalar>, MasaError> {
    let basis = build_generators(n)?;
    let sym = basis.symmetric_indices();
    let mut row = vec![Scalar::zero(); sym.len()];
    for (k, c) in terms {
        let slot = sym.iter().position(|s| s == k).ok_or(MasaError::BadBasisIndex { index: *k, n })?;
        row[slot] += c;
    }
    Ok(row)
}

/// Assembles `Z_μ` from rows over the symmetric basis; does not validate.
pub fn masa_from_coeffs(n: usize, coeffs: Vec<Vec<Scalar>>) -> Result<MasaSpec, MasaError> {
    let basis = build_generators(n)?;
    let sym = basis.symmetric_indices();
    let matrices = coeffs
        .iter()
        .map(|row| {
            if row.len() != sym.len() {
                return Err(MasaError::BadBasisIndex { index: row.len().max(sym.len()), n });
            }
            let terms: Vec<(usize, Scalar)> = sym.iter().copied().zip(row.iter().cloned()).collect();
            Ok(basis.combine(&terms)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MasaSpec { n, name: None, coeffs, matrices, parity: None, pt_sign: None })
}

impl MasaSpec {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn coeffs(&self) -> &[Vec<Scalar>] {
        &self.coeffs
    }

    pub fn matrices(&self) -> &[CMatrixExact] {
        &self.matrices
    }

    pub fn parity(&self) -> Option<&SignedPermutation> {
        self.parity.as_ref()
    }

    pub fn pt_sign(&self) -> Option<&[i8]> {
        self.pt_sign.as_deref()
    }

    /// Attaches a parity and the signs it induces.
    pub fn with_parity(mut self, parity: SignedPermutation) -> Result<Self, MasaError> {
        let eps = classify_pt(&self, &parity)?;
        self.parity = Some(parity);
        self.pt_sign = Some(eps);
        Ok(self)
    }

    pub fn basis(&self) -> GeneratorBasis {
        build_generators(self.n).expect("rank checked at construction")
    }

    /// `Σ_ν c_μ^ν X_ν` as sparse pairs over the full generator basis.
    pub fn generator_terms(&self, mu: usize) -> Vec<(usize, Scalar)> {
        let sym = self.basis().symmetric_indices();
        sym.into_iter().zip(self.coeffs[mu].iter().cloned()).filter(|(_, c)| !c.is_zero()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasaReport {
    pub generator_count_ok: bool,
    pub symmetric: Vec<bool>,
    pub noncommuting_pairs: Vec<(usize, usize)>,
    pub rank: usize,
    pub independent: bool,
    pub nilpotency_orders: Vec<Option<u32>>,
}

impl MasaReport {
    pub fn valid(&self) -> bool {
        self.generator_count_ok && self.symmetric.iter().all(|&s| s) && self.noncommuting_pairs.is_empty() && self.independent
    }
}

/// Smallest `k` with `Mᵏ = 0`.
pub fn nilpotency_order(m: &CMatrixExact) -> Option<u32> {
    let n = m.rows();
    let mut p = m.clone();
    for k in 1..=n as u32 {
        if p.is_zero() {
            return Some(k);
        }
        p = &p * m;
    }
    None
}

pub fn validate_masa(m: &MasaSpec) -> MasaReport {
    let z = &m.matrices;
    let symmetric = z.iter().map(CMatrixExact::is_symmetric).collect();
    let mut noncommuting_pairs = Vec::new();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if !z[i].commutator(&z[j]).map(|c| c.is_zero()).unwrap_or(false) {
                noncommuting_pairs.push((i, j));
            }
        }
    }
    let flat = CMatrixExact::new(z.len(), m.n * m.n, z.iter().flat_map(|x| x.entries().iter().cloned()).collect())
        .expect("square matrices of equal size");
    let rank = flat.rank();
    MasaReport {
        generator_count_ok: z.len() == m.n,
        symmetric,
        noncommuting_pairs,
        rank,
        independent: rank == z.len(),
        nilpotency_orders: z.iter().map(nilpotency_order).collect(),
    }
}

/// Signs `ε_μ` with `Z_μ = ε_μ 𝒫 Z̄_μ 𝒫`.
pub fn classify_pt(m: &MasaSpec, parity: &SignedPermutation) -> Result<Vec<i8>, MasaError> {
    if parity.n() != m.n || !parity.is_involution() {
        return Err(MasaError::InvalidParity);
    }
    m.matrices
        .iter()
        .enumerate()
        .map(|(mu, z)| {
            let image = parity.conjugate(&z.conj());
            if image == *z {
                Ok(1)
            } else if image == -z {
                Ok(-1)
            } else {
                Err(MasaError::NotPTCompatible { generator: mu })
            }
        })
        .collect()
}

/// The common sign, when every generator has the same one.
pub fn uniform_sign(eps: &[i8]) -> Option<i8> {
    let first = *eps.first()?;
    eps.iter().all(|&e| e == first).then_some(first)
}
