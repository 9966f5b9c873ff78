use num_complex::Complex64;

use crate::float_matrix::CMatrixFloat;
use crate::NumericError;

type C = Complex64;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

fn lincomb(terms: &[(f64, &CMatrixFloat)], n: usize) -> CMatrixFloat {
    let mut out = CMatrixFloat::zeros(n, n);
    for (c, m) in terms {
        out = &out + &m.scale(C::new(*c, 0.0));
    }
    out
}

/// Matrix exponential by scaling and squaring with a degree-13 Padé approximant.
pub fn mat_exp_numeric(m: &CMatrixFloat) -> Result<CMatrixFloat, NumericError> {
    if !m.is_square() {
        return Err(NumericError::NotSquare);
    }
    let n = m.rows();
    let norm = m.norm_one();
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = m.scale(C::new(2f64.powi(-s), 0.0));
    let id = CMatrixFloat::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = &PADE13;
    let inner_u = lincomb(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)], n);
    let u = &a * &(&(&a6 * &inner_u) + &lincomb(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &id)], n));
    let inner_v = lincomb(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)], n);
    let v = &(&a6 * &inner_v) + &lincomb(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &id)], n);
    let mut r = (&v - &u).solve(&(&v + &u))?;
    for _ in 0..s {
        r = &r * &r;
    }
    CMatrixFloat::new(n, n, r.data().to_vec())
}
