use num_traits::Zero;
use numeric_core::{exact_inverse, CMatrixExact, CRat, NumericError, Scalar};

use crate::LieError;

/// Ordered generators X₀, X₁, … of u(n), all anti-Hermitian, together with
/// the structure constants of their brackets in the same basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorBasis {
    n: usize,
    generators: Vec<CMatrixExact>,
    symmetric_flags: Vec<bool>,
    coord_inverse: CMatrixExact,
    brackets: Vec<Vec<Vec<(usize, Scalar)>>>,
}

fn g(re: i64, im: i64) -> Scalar {
    Scalar::from_crat(CRat::gauss(re, im))
}

/// Entries as Gaussian integers `(re, im)`.
fn gauss_matrix(rows: &[&[(i64, i64)]]) -> CMatrixExact {
    CMatrixExact::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| g(a, b)).collect()).collect())
        .expect("rectangular literal")
}

const O: (i64, i64) = (0, 0);
const P: (i64, i64) = (1, 0);
const M: (i64, i64) = (-1, 0);
const I: (i64, i64) = (0, 1);
const J: (i64, i64) = (0, -1);

fn u2_generators() -> Vec<CMatrixExact> {
    vec![
        gauss_matrix(&[&[I, O], &[O, I]]),
        gauss_matrix(&[&[O, I], &[I, O]]),
        gauss_matrix(&[&[O, P], &[M, O]]),
        gauss_matrix(&[&[I, O], &[O, J]]),
    ]
}

fn u3_generators() -> Vec<CMatrixExact> {
    vec![
        gauss_matrix(&[&[I, O, O], &[O, I, O], &[O, O, I]]),
        gauss_matrix(&[&[I, O, O], &[O, J, O], &[O, O, O]]),
        gauss_matrix(&[&[O, O, O], &[O, I, O], &[O, O, J]]),
        gauss_matrix(&[&[O, P, O], &[M, O, O], &[O, O, O]]),
        gauss_matrix(&[&[O, I, O], &[I, O, O], &[O, O, O]]),
        gauss_matrix(&[&[O, O, P], &[O, O, O], &[M, O, O]]),
        gauss_matrix(&[&[O, O, I], &[O, O, O], &[I, O, O]]),
        gauss_matrix(&[&[O, O, O], &[O, O, P], &[O, M, O]]),
        gauss_matrix(&[&[O, O, O], &[O, O, I], &[O, I, O]]),
    ]
}

/// The standard realization: `X_i = iσ_i` for u(2), the eight-generator
/// realization for u(3), and `X₀ = i·I` in both cases.
pub fn build_generators(n: usize) -> Result<GeneratorBasis, LieError> {
    match n {
        2 => GeneratorBasis::from_matrices(2, u2_generators()),
        3 => GeneratorBasis::from_matrices(3, u3_generators()),
        _ => Err(LieError::UnsupportedRank(n)),
    }
}

/// `AB − BA` computed exactly.
pub fn commutator_matrix(a: &CMatrixExact, b: &CMatrixExact) -> Result<CMatrixExact, LieError> {
    if !a.is_square() {
        return Err(LieError::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    if (b.rows(), b.cols()) != (a.rows(), a.cols()) {
        return Err(LieError::DimensionMismatch { expected: a.rows(), found: b.rows() });
    }
    Ok(a.commutator(b)?)
}

impl GeneratorBasis {
    /// Any n² matrices spanning gl(n, ℂ); brackets are expanded in this basis.
    pub fn from_matrices(n: usize, generators: Vec<CMatrixExact>) -> Result<Self, LieError> {
        let dim = n * n;
        if generators.len() != dim {
            return Err(LieError::DimensionMismatch { expected: dim, found: generators.len() });
        }
        if let Some(bad) = generators.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(LieError::DimensionMismatch { expected: n, found: bad.rows().max(bad.cols()) });
        }
        let mut coords = CMatrixExact::zeros(dim, dim);
        for (k, m) in generators.iter().enumerate() {
            for (r, v) in m.entries().iter().enumerate() {
                coords.set(r, k, v.clone());
            }
        }
        let coord_inverse = match exact_inverse(&coords) {
            Ok(inv) => inv,
            Err(NumericError::SingularMatrix) => return Err(LieError::NotABasis),
            Err(e) => return Err(e.into()),
        };
        let symmetric_flags = generators.iter().map(CMatrixExact::is_symmetric).collect();
        let mut basis = GeneratorBasis { n, generators, symmetric_flags, coord_inverse, brackets: Vec::new() };
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let c = basis.generators[i].commutator(&basis.generators[j])?;
                let sparse: Vec<(usize, Scalar)> =
                    basis.decompose(&c)?.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                brackets[j][i] = sparse.iter().map(|(k, v)| (*k, -v)).collect();
                brackets[i][j] = sparse;
            }
        }
        basis.brackets = brackets;
        Ok(basis)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators, n².
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[CMatrixExact] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> Result<&CMatrixExact, LieError> {
        self.generators.get(i).ok_or(LieError::BadIndex { index: i, size: self.dim() })
    }

    pub fn symmetric_flags(&self) -> &[bool] {
        &self.symmetric_flags
    }

    /// Indices of the symmetric generators in basis order.
    pub fn symmetric_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.symmetric_flags[i]).collect()
    }

    /// `[X_i, X_j] = Σ_k c_ij^k X_k` as sparse `(k, c)` pairs.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.brackets[i][j]
    }

    /// Coefficients of `m` in the generator basis.
    pub fn decompose(&self, m: &CMatrixExact) -> Result<Vec<Scalar>, LieError> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(LieError::DimensionMismatch { expected: self.n, found: m.rows() });
        }
        Ok(self.coord_inverse.mul_vec(m.entries()))
    }

    /// `Σ c_k X_k`.
    pub fn combine(&self, coeffs: &[(usize, Scalar)]) -> Result<CMatrixExact, LieError> {
        let mut out = CMatrixExact::zeros(self.n, self.n);
        for (k, c) in coeffs {
            out = &out + &self.generator(*k)?.scale(c);
        }
        Ok(out)
    }
}

/// One printed relation `[X_left, X_right] = Σ c X_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureEntry {
    pub left: usize,
    pub right: usize,
    pub rhs: Vec<(usize, i64)>,
}

const U2_TABLE: &[(usize, usize, &[(usize, i64)])] = &[(3, 2, &[(1, 2)]), (2, 1, &[(3, 2)]), (1, 3, &[(2, 2)])];

const U3_TABLE: &[(usize, usize, &[(usize, i64)])] = &[
    (1, 3, &[(4, 2)]),
    (1, 4, &[(3, -2)]),
    (1, 5, &[(6, 1)]),
    (1, 6, &[(5, -1)]),
    (1, 7, &[(8, -1)]),
    (1, 8, &[(7, 1)]),
    (2, 3, &[(4, -1)]),
    (2, 4, &[(3, 1)]),
    (2, 5, &[(6, 1)]),
    (2, 6, &[(5, -1)]),
    (2, 7, &[(8, 2)]),
    (2, 8, &[(7, -2)]),
    (3, 4, &[(1, 2)]),
    (3, 5, &[(7, -1)]),
    (3, 6, &[(8, -1)]),
    (3, 7, &[(5, 1)]),
    (3, 8, &[(6, 1)]),
    (4, 5, &[(8, 1)]),
    (4, 6, &[(7, -1)]),
    (4, 7, &[(6, 1)]),
    (4, 8, &[(5, -1)]),
    (5, 6, &[(1, 2), (2, 2)]),
    (5, 7, &[(3, -1)]),
    (5, 8, &[(4, 1)]),
    (6, 7, &[(4, -1)]),
    (6, 8, &[(3, -1)]),
    (7, 8, &[(2, 2)]),
];

/// The commutation relations of the named realization of u(n).
pub fn structure_table(n: usize) -> Result<Vec<StructureEntry>, LieError> {
    let raw = match n {
        2 => U2_TABLE,
        3 => U3_TABLE,
        _ => return Err(LieError::UnsupportedRank(n)),
    };
    Ok(raw.iter().map(|&(left, right, rhs)| StructureEntry { left, right, rhs: rhs.to_vec() }).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub checked: usize,
    pub passed: usize,
    /// `(left, right)` of every failing relation.
    pub mismatches: Vec<(usize, usize)>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.checked == self.passed
    }
}

/// Recomputes every tabulated commutator from the basis matrices.
pub fn verify_structure_constants(basis: &GeneratorBasis) -> StructureReport {
    let table = structure_table(basis.n()).unwrap_or_default();
    let mut mismatches = Vec::new();
    for e in &table {
        let holds = (|| -> Result<bool, LieError> {
            let lhs = commutator_matrix(basis.generator(e.left)?, basis.generator(e.right)?)?;
            let rhs: Vec<(usize, Scalar)> = e.rhs.iter().map(|&(k, c)| (k, Scalar::from_int(c))).collect();
            Ok(lhs == basis.combine(&rhs)?)
        })()
        .unwrap_or(false);
        if !holds {
            mismatches.push((e.left, e.right));
        }
    }
    StructureReport { checked: table.len(), passed: table.len() - mismatches.len(), mismatches }
}
