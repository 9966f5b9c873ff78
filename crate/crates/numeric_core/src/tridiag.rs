use num_complex::Complex64;

use crate::NumericError;

type C = Complex64;

/// Eigenvalues of the complex symmetric tridiagonal matrix with diagonal `d`
/// and off-diagonal `e` (`e.len() == d.len() − 1`), by implicit QL with
/// complex orthogonal rotations. Real symmetric input follows the classical
/// real algorithm exactly.
pub fn eig_sym_tridiagonal(d: &[C], e: &[C]) -> Result<Vec<C>, NumericError> {
    let n = d.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if e.len() + 1 != n {
        return Err(NumericError::DimensionMismatch { expected: n - 1, found: e.len() });
    }
    let mut d = d.to_vec();
    let mut e: Vec<C> = e.iter().copied().chain(std::iter::once(C::new(0.0, 0.0))).collect();
    let eps = f64::EPSILON;
    let one = C::new(1.0, 0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].norm() + d[m + 1].norm();
                if e[m].norm() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(NumericError::NoConvergence { iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (e[l] * 2.0);
            let mut r = (g * g + one).sqrt();
            let denom = if (g + r).norm() >= (g - r).norm() { g + r } else { g - r };
            g = d[m] - d[l] + e[l] / denom;
            let (mut s, mut c, mut p) = (one, one, C::new(0.0, 0.0));
            let mut early = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r.norm() == 0.0 {
                    d[i + 1] -= p;
                    e[m] = C::new(0.0, 0.0);
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + c * b * 2.0;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = C::new(0.0, 0.0);
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_spectrum() {
        let n = 50;
        let d = vec![C::new(2.0, 0.0); n];
        let e = vec![C::new(-1.0, 0.0); n - 1];
        let mut w: Vec<f64> = eig_sym_tridiagonal(&d, &e).unwrap().iter().map(|z| z.re).collect();
        w.sort_by(f64::total_cmp);
        for (k, x) in w.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((x - exact).abs() < 1e-12);
        }
    }
}
