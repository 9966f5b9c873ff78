use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::NumericError;

type C = Complex64;

/// Dense double-precision complex matrix, row-major, finite entries only.
#[derive(Clone, PartialEq, Debug)]
pub struct CMatrixFloat {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl CMatrixFloat {
    pub fn new(rows: usize, cols: usize, data: Vec<C>) -> Result<Self, NumericError> {
        if data.len() != rows * cols {
            return Err(NumericError::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(NumericError::NonFinite);
        }
        Ok(CMatrixFloat { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C>]) -> Result<Self, NumericError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(NumericError::Ragged);
        }
        Self::new(r, c, rows.concat())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Result<Self, NumericError> {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::new(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrixFloat { rows, cols, data: vec![C::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(d: &[C]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
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

    pub fn data(&self) -> &[C] {
        &self.data
    }

    pub fn scale(&self, s: C) -> Self {
        CMatrixFloat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        t.data.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral norm estimate by power iteration on `MᴴM`.
    pub fn norm2(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        let adj = self.adjoint();
        let mut v: Vec<C> = (0..self.cols).map(|j| C::new(1.0 + 0.1 * j as f64, 0.3)).collect();
        let mut est = 0.0;
        for _ in 0..200 {
            let w = adj.mul_vec(&self.mul_vec(&v));
            let n = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n == 0.0 {
                return 0.0;
            }
            v = w.into_iter().map(|z| z / n).collect();
            if (n - est).abs() <= 1e-14 * n {
                est = n;
                break;
            }
            est = n;
        }
        est.sqrt()
    }

    /// LU factorisation with partial pivoting.
    pub fn lu(&self) -> Result<Lu, NumericError> {
        if !self.is_square() {
            return Err(NumericError::NotSquare);
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
                .unwrap();
            if a[p * n + k].norm() == 0.0 {
                return Err(NumericError::SingularMatrix);
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let piv = a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] / piv;
                a[i * n + k] = f;
                if f.norm() != 0.0 {
                    for j in k + 1..n {
                        let t = a[k * n + j];
                        a[i * n + j] -= f * t;
                    }
                }
            }
        }
        Ok(Lu { n, a, perm })
    }

    pub fn inverse(&self) -> Result<Self, NumericError> {
        let lu = self.lu()?;
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for j in 0..n {
            let mut e = vec![C::new(0.0, 0.0); n];
            e[j] = C::new(1.0, 0.0);
            let x = lu.solve(&e);
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        Ok(out)
    }

    pub fn solve(&self, b: &Self) -> Result<Self, NumericError> {
        let lu = self.lu()?;
        let mut out = Self::zeros(self.rows, b.cols);
        for j in 0..b.cols {
            let col: Vec<C> = (0..b.rows).map(|i| b[(i, j)]).collect();
            let x = lu.solve(&col);
            for i in 0..self.rows {
                out[(i, j)] = x[i];
            }
        }
        Ok(out)
    }

    pub fn block(blocks: &[&[&CMatrixFloat]]) -> Self {
        let rows: usize = blocks.iter().map(|r| r[0].rows).sum();
        let cols: usize = blocks[0].iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for brow in blocks {
            let mut c0 = 0;
            for b in brow.iter() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out[(r0 + i, c0 + j)] = b[(i, j)];
                    }
                }
                c0 += b.cols;
            }
            r0 += brow[0].rows;
        }
        out
    }

    pub fn sub_block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        out
    }
}

pub struct Lu {
    n: usize,
    a: Vec<C>,
    perm: Vec<usize>,
}

impl Lu {
    pub fn solve(&self, b: &[C]) -> Vec<C> {
        let n = self.n;
        let mut x: Vec<C> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.a[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.a[i * n + j] * x[j];
            }
            x[i] = s / self.a[i * n + i];
        }
        x
    }
}

impl std::ops::Index<(usize, usize)> for CMatrixFloat {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrixFloat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a CMatrixFloat> for &'a CMatrixFloat {
    type Output = CMatrixFloat;
    fn mul(self, o: &CMatrixFloat) -> CMatrixFloat {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = CMatrixFloat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C::new(0.0, 0.0) {
                    continue;
                }
                let orow = &o.data[k * o.cols..(k + 1) * o.cols];
                let out_row = &mut out.data[i * o.cols..(i + 1) * o.cols];
                for (dst, b) in out_row.iter_mut().zip(orow) {
                    *dst += a * b;
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a CMatrixFloat> for &'a CMatrixFloat {
    type Output = CMatrixFloat;
    fn add(self, o: &CMatrixFloat) -> CMatrixFloat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        CMatrixFloat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CMatrixFloat> for &'a CMatrixFloat {
    type Output = CMatrixFloat;
    fn sub(self, o: &CMatrixFloat) -> CMatrixFloat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        CMatrixFloat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}
