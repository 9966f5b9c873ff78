use num_traits::{One, Zero};
use numeric_core::Scalar;

use crate::PhaseError;

/// Exact Taylor data of a function at a point: value, and up to second
/// derivatives in the 3n phase-space variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    order: u8,
    m: usize,
    val: Scalar,
    grad: Vec<Scalar>,
    hess: Vec<Scalar>,
}

impl Jet {
    pub fn constant(m: usize, order: u8, c: Scalar) -> Self {
        let g = if order >= 1 { vec![Scalar::zero(); m] } else { Vec::new() };
        let h = if order >= 2 { vec![Scalar::zero(); m * m] } else { Vec::new() };
        Jet { order, m, val: c, grad: g, hess: h }
    }

    pub(crate) fn from_parts(order: u8, m: usize, val: Scalar, grad: Vec<Scalar>, hess: Vec<Scalar>) -> Self {
        Jet { order, m, val, grad, hess }
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn value(&self) -> &Scalar {
        &self.val
    }

    pub fn grad(&self, i: usize) -> &Scalar {
        &self.grad[i]
    }

    pub fn hess(&self, i: usize, j: usize) -> &Scalar {
        &self.hess[i * self.m + j]
    }

    /// Same data truncated to a lower order.
    pub fn truncate(&self, order: u8) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Jet {
            order,
            m: self.m,
            val: self.val.clone(),
            grad: if order >= 1 { self.grad.clone() } else { Vec::new() },
            hess: Vec::new(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        Jet {
            order,
            m: self.m,
            val: &self.val + &o.val,
            grad: zip_op(&self.grad, &o.grad, order >= 1, |a, b| a + b),
            hess: zip_op(&self.hess, &o.hess, order >= 2, |a, b| a + b),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Jet {
            order: self.order,
            m: self.m,
            val: &self.val * c,
            grad: self.grad.iter().map(|x| x * c).collect(),
            hess: self.hess.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let m = self.m;
        let grad = if order >= 1 {
            (0..m).map(|i| &(&self.grad[i] * &o.val) + &(&self.val * &o.grad[i])).collect()
        } else {
            Vec::new()
        };
        let hess = if order >= 2 {
            let mut h = vec![Scalar::zero(); m * m];
            for i in 0..m {
                for j in i..m {
                    let mut v = &self.hess[i * m + j] * &o.val;
                    v += &(&self.val * &o.hess[i * m + j]);
                    v += &(&self.grad[i] * &o.grad[j]);
                    v += &(&self.grad[j] * &o.grad[i]);
                    h[j * m + i] = v.clone();
                    h[i * m + j] = v;
                }
            }
            h
        } else {
            Vec::new()
        };
        Jet { order, m, val: &self.val * &o.val, grad, hess }
    }

    /// `1/u`; fails when the value vanishes.
    pub fn inv(&self) -> Result<Self, PhaseError> {
        if self.val.is_zero() {
            return Err(PhaseError::Singular);
        }
        let m = self.m;
        let r = self.val.inv()?;
        let r2 = &r * &r;
        let grad = if self.order >= 1 { self.grad.iter().map(|g| -&(g * &r2)).collect() } else { Vec::new() };
        let hess = if self.order >= 2 {
            let r3 = &(&r2 * &r) * &Scalar::from_int(2);
            let mut h = vec![Scalar::zero(); m * m];
            for i in 0..m {
                for j in i..m {
                    let v = &(&(&self.grad[i] * &self.grad[j]) * &r3) - &(&self.hess[i * m + j] * &r2);
                    h[j * m + i] = v.clone();
                    h[i * m + j] = v;
                }
            }
            h
        } else {
            Vec::new()
        };
        Ok(Jet { order: self.order, m, val: r, grad, hess })
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut out = Jet::constant(self.m, self.order, Scalar::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

fn zip_op(a: &[Scalar], b: &[Scalar], keep: bool, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Vec<Scalar> {
    if keep {
        a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
    } else {
        Vec::new()
    }
}
