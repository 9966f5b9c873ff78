use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::float_matrix::CMatrixFloat;
use crate::scalar::Scalar;
use crate::NumericError;

/// Dense exact matrix over [`Scalar`], row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CMatrixExact {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl CMatrixExact {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, NumericError> {
        if data.len() != rows * cols {
            return Err(NumericError::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(CMatrixExact { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, NumericError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(NumericError::Ragged);
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrixExact { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        CMatrixExact { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|x| x * s)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn sym_part(&self) -> Self {
        (self + &self.transpose()).scale(&Scalar::from_ratio(1, 2))
    }

    pub fn antisym_part(&self) -> Self {
        (self - &self.transpose()).scale(&Scalar::from_ratio(1, 2))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, NumericError> {
        if self.cols != o.rows {
            return Err(NumericError::DimensionMismatch { expected: self.cols, found: o.rows });
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `AB − BA`.
    pub fn commutator(&self, o: &Self) -> Result<Self, NumericError> {
        if !self.is_square() || self.rows != o.rows || !o.is_square() {
            return Err(NumericError::DimensionMismatch { expected: self.rows, found: o.rows });
        }
        Ok(&self.checked_mul(o)? - &o.checked_mul(self)?)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row-reduced echelon form; returns (reduced matrix, pivot columns).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn determinant(&self) -> Result<Scalar, NumericError> {
        if !self.is_square() {
            return Err(NumericError::NotSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv()?;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn to_float(&self) -> CMatrixFloat {
        CMatrixFloat::new(self.rows, self.cols, self.data.iter().map(Scalar::to_complex64).collect())
            .expect("exact entries are finite")
    }
}

/// Exact inverse by Gauss–Jordan elimination over the scalar field.
pub fn exact_inverse(m: &CMatrixExact) -> Result<CMatrixExact, NumericError> {
    if !m.is_square() {
        return Err(NumericError::NotSquare);
    }
    let n = m.rows;
    let mut aug = CMatrixExact::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, Scalar::one());
    }
    let (red, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(NumericError::SingularMatrix);
    }
    let mut out = CMatrixExact::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, red.get(i, n + j).clone());
        }
    }
    Ok(out)
}

impl<'a> Add<&'a CMatrixExact> for &'a CMatrixExact {
    type Output = CMatrixExact;
    fn add(self, o: &CMatrixExact) -> CMatrixExact {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        CMatrixExact {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CMatrixExact> for &'a CMatrixExact {
    type Output = CMatrixExact;
    fn sub(self, o: &CMatrixExact) -> CMatrixExact {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        CMatrixExact {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CMatrixExact> for &'a CMatrixExact {
    type Output = CMatrixExact;
    fn mul(self, o: &CMatrixExact) -> CMatrixExact {
        self.checked_mul(o).expect("shape mismatch")
    }
}

impl Neg for &CMatrixExact {
    type Output = CMatrixExact;
    fn neg(self) -> CMatrixExact {
        self.map(|x| -x)
    }
}

impl fmt::Display for CMatrixExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> CMatrixExact {
        CMatrixExact::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn det_and_rank() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(a.determinant().unwrap().is_zero());
        assert_eq!(a.rank(), 1);
        assert_eq!(m(&[&[1, 1], &[0, 2]]).determinant().unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn singular_inverse() {
        assert_eq!(exact_inverse(&m(&[&[1, 2], &[2, 4]])), Err(NumericError::SingularMatrix));
    }
}
