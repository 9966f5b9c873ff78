//! Dense complex nonsymmetric eigenvalue solver.
//!
//! Balancing (permutation isolation plus diagonal scaling), Householder
//! reduction to Hessenberg form, then single-shift complex QR with
//! Wilkinson shifts.

use num_complex::Complex64;

use crate::float_matrix::CMatrixFloat;
use crate::NumericError;

type C = Complex64;

const ZERO: C = C { re: 0.0, im: 0.0 };
const ONE: C = C { re: 1.0, im: 0.0 };

#[derive(Clone, Copy, Debug)]
pub struct EigConfig {
    /// QR iterations allowed per eigenvalue before giving up.
    pub sweeps_per_eigenvalue: usize,
    pub balance: bool,
}

impl Default for EigConfig {
    fn default() -> Self {
        EigConfig { sweeps_per_eigenvalue: 60, balance: true }
    }
}

#[derive(Clone, Debug)]
pub struct EigDecomposition {
    pub values: Vec<C>,
    /// Column `k` is a unit eigenvector for `values[k]`.
    pub vectors: CMatrixFloat,
}

struct Balanced {
    ilo: usize,
    ihi: usize,
    scale: Vec<f64>,
    swaps: Vec<(usize, usize)>,
}

fn swap_sym(a: &mut [C], n: usize, j: usize, m: usize) {
    if j == m {
        return;
    }
    for i in 0..n {
        a.swap(i * n + j, i * n + m);
    }
    for i in 0..n {
        a.swap(j * n + i, m * n + i);
    }
}

fn balance(a: &mut [C], n: usize, scale_too: bool) -> Balanced {
    let mut swaps = Vec::new();
    let mut scale = vec![1.0; n];
    if n == 0 {
        return Balanced { ilo: 0, ihi: 0, scale, swaps };
    }
    let mut l = n - 1;
    let mut k = 0usize;
    let mut done_rows = false;
    // rows with no off-diagonal support in 0..=l go to the bottom
    while !done_rows {
        done_rows = true;
        for j in (0..=l).rev() {
            if (0..=l).all(|i| i == j || a[j * n + i] == ZERO) {
                swap_sym(a, n, j, l);
                swaps.push((j, l));
                if l == 0 {
                    return Balanced { ilo: 0, ihi: 0, scale, swaps };
                }
                l -= 1;
                done_rows = false;
                break;
            }
        }
    }
    let mut done_cols = false;
    while !done_cols {
        done_cols = true;
        for j in k..=l {
            if (k..=l).all(|i| i == j || a[i * n + j] == ZERO) {
                swap_sym(a, n, j, k);
                swaps.push((j, k));
                k += 1;
                done_cols = false;
                break;
            }
        }
    }
    if scale_too {
        let radix = 2.0f64;
        let mut noconv = true;
        let mut rounds = 0;
        while noconv && rounds < 100 {
            rounds += 1;
            noconv = false;
            for i in k..=l {
                let mut c = 0.0;
                let mut r = 0.0;
                for j in k..=l {
                    if j != i {
                        c += a[j * n + i].norm_sqr();
                        r += a[i * n + j].norm_sqr();
                    }
                }
                let (mut c, mut r) = (c.sqrt(), r.sqrt());
                if c == 0.0 || r == 0.0 {
                    continue;
                }
                let s = c + r;
                let mut f = 1.0;
                let mut g = r / radix;
                while c < g && f < 1e150 {
                    f *= radix;
                    c *= radix;
                    r /= radix;
                    g /= radix;
                }
                g = c / radix;
                while g >= r && f > 1e-150 {
                    f /= radix;
                    c /= radix;
                    g /= radix;
                    r *= radix;
                }
                if c + r >= 0.95 * s {
                    continue;
                }
                scale[i] *= f;
                noconv = true;
                for j in 0..n {
                    a[i * n + j] /= f;
                }
                for j in 0..n {
                    a[j * n + i] *= f;
                }
            }
        }
    }
    Balanced { ilo: k, ihi: l, scale, swaps }
}

/// Householder reduction of the window `ilo..=ihi` to upper Hessenberg form.
fn hessenberg(a: &mut [C], n: usize, ilo: usize, ihi: usize, mut q: Option<&mut [C]>) {
    if ihi < ilo + 2 {
        return;
    }
    for col in ilo..ihi - 1 {
        let start = col + 1;
        let xnorm: f64 = (start..=ihi).map(|i| a[i * n + col].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a[start * n + col];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        let mut v: Vec<C> = (start..=ihi).map(|i| a[i * n + col]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        // left: A ← (I − τ v vᴴ) A on rows start..=ihi
        for j in 0..n {
            let mut s = ZERO;
            for (t, vi) in v.iter().enumerate() {
                s += vi.conj() * a[(start + t) * n + j];
            }
            if s == ZERO {
                continue;
            }
            s *= tau;
            for (t, vi) in v.iter().enumerate() {
                a[(start + t) * n + j] -= vi * s;
            }
        }
        // right: A ← A (I − τ v vᴴ) on columns start..=ihi
        for i in 0..n {
            let mut s = ZERO;
            for (t, vi) in v.iter().enumerate() {
                s += a[i * n + start + t] * vi;
            }
            if s == ZERO {
                continue;
            }
            s *= tau;
            for (t, vi) in v.iter().enumerate() {
                a[i * n + start + t] -= s * vi.conj();
            }
        }
        if let Some(q) = q.as_deref_mut() {
            for i in 0..n {
                let mut s = ZERO;
                for (t, vi) in v.iter().enumerate() {
                    s += q[i * n + start + t] * vi;
                }
                if s == ZERO {
                    continue;
                }
                s *= tau;
                for (t, vi) in v.iter().enumerate() {
                    q[i * n + start + t] -= s * vi.conj();
                }
            }
        }
        a[start * n + col] = alpha;
        for i in start + 1..=ihi {
            a[i * n + col] = ZERO;
        }
    }
}

/// Rotation `[c s; −s̄ c]` mapping `(f, g)` to `(r, 0)`.
fn givens(f: C, g: C) -> (f64, C) {
    if g == ZERO {
        return (1.0, ZERO);
    }
    if f == ZERO {
        return (0.0, g.conj() / g.norm());
    }
    let nf = f.norm();
    let norm = nf.hypot(g.norm());
    (nf / norm, (f / nf) * g.conj() / norm)
}

struct Window {
    n: usize,
    full: bool,
}

impl Window {
    fn rot_rows(&self, h: &mut [C], k: usize, c: f64, s: C, from: usize, to: usize) {
        let n = self.n;
        for j in from..to {
            let a = h[k * n + j];
            let b = h[(k + 1) * n + j];
            h[k * n + j] = a * c + s * b;
            h[(k + 1) * n + j] = -s.conj() * a + b * c;
        }
    }

    fn rot_cols(&self, h: &mut [C], k: usize, c: f64, s: C, from: usize, to: usize) {
        let n = self.n;
        for i in from..to {
            let a = h[i * n + k];
            let b = h[i * n + k + 1];
            h[i * n + k] = a * c + b * s.conj();
            h[i * n + k + 1] = -a * s + b * c;
        }
    }
}

fn wilkinson(a: C, b: C, c: C, d: C) -> C {
    let tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = tr + root;
    let l2 = tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex single-shift QR on an upper Hessenberg window; leaves `h` upper
/// triangular on `ilo..=ihi` and writes the eigenvalues into `w`.
fn hqr(
    h: &mut [C],
    n: usize,
    ilo: usize,
    ihi: usize,
    want_t: bool,
    mut z: Option<&mut [C]>,
    w: &mut [C],
    budget: usize,
) -> Result<(), NumericError> {
    let win = Window { n, full: want_t };
    let eps = f64::EPSILON;
    let hnorm: f64 = h.iter().map(|x| x.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut i = ihi as isize;
    let ilo = ilo as isize;
    let mut total_its = 0usize;
    while i >= ilo {
        let mut its = 0usize;
        loop {
            let iu = i as usize;
            // find l: start of the unreduced block ending at i
            let mut l = iu;
            while l as isize > ilo {
                let sub = h[l * n + l - 1].norm();
                let mut tst = h[l * n + l].norm() + h[(l - 1) * n + l - 1].norm();
                if tst == 0.0 {
                    tst = hnorm;
                }
                if sub <= eps * tst || sub < f64::MIN_POSITIVE * 1e3 {
                    h[l * n + l - 1] = ZERO;
                    break;
                }
                l -= 1;
            }
            if l == iu {
                w[iu] = h[iu * n + iu];
                i -= 1;
                break;
            }
            its += 1;
            total_its += 1;
            if its > budget {
                return Err(NumericError::NoConvergence { iterations: total_its });
            }
            let shift = if its % 11 == 10 {
                // exceptional shift
                h[iu * n + iu] + C::new(0.75 * h[iu * n + iu - 1].norm(), 0.0)
            } else if its % 23 == 22 {
                h[l * n + l] + C::new(0.0, 0.75 * h[(l + 1) * n + l].norm())
            } else {
                wilkinson(
                    h[(iu - 1) * n + iu - 1],
                    h[(iu - 1) * n + iu],
                    h[iu * n + iu - 1],
                    h[iu * n + iu],
                )
            };
            let col_end = if win.full { n } else { iu + 1 };
            let row_start = if win.full { 0 } else { l };
            for k in l..iu {
                let (f, g) = if k == l {
                    (h[l * n + l] - shift, h[(l + 1) * n + l])
                } else {
                    (h[k * n + k - 1], h[(k + 1) * n + k - 1])
                };
                let (c, s) = givens(f, g);
                let from = if k == l { l } else { k - 1 };
                win.rot_rows(h, k, c, s, from, col_end);
                if k > l {
                    h[(k + 1) * n + k - 1] = ZERO;
                }
                let to = (k + 3).min(iu + 1);
                win.rot_cols(h, k, c, s, row_start, to);
                if let Some(z) = z.as_deref_mut() {
                    win.rot_cols(z, k, c, s, 0, n);
                }
            }
        }
    }
    Ok(())
}

fn eig_impl(m: &CMatrixFloat, cfg: EigConfig, want_vectors: bool) -> Result<(Vec<C>, Option<CMatrixFloat>), NumericError> {
    if !m.is_square() {
        return Err(NumericError::NotSquare);
    }
    let n = m.rows();
    if n == 0 {
        return Ok((Vec::new(), want_vectors.then(|| CMatrixFloat::zeros(0, 0))));
    }
    let mut a = m.data().to_vec();
    let bal = if cfg.balance {
        balance(&mut a, n, true)
    } else {
        Balanced { ilo: 0, ihi: n - 1, scale: vec![1.0; n], swaps: Vec::new() }
    };
    let mut q = if want_vectors { Some(CMatrixFloat::identity(n).data().to_vec()) } else { None };
    let mut w = vec![ZERO; n];
    for i in (0..bal.ilo).chain(bal.ihi + 1..n) {
        w[i] = a[i * n + i];
    }
    if bal.ihi >= bal.ilo {
        hessenberg(&mut a, n, bal.ilo, bal.ihi, q.as_deref_mut());
        hqr(&mut a, n, bal.ilo, bal.ihi, want_vectors, q.as_deref_mut(), &mut w, cfg.sweeps_per_eigenvalue)?;
    }
    if !want_vectors {
        return Ok((w, None));
    }
    let q = q.unwrap();
    // eigenvectors of the triangular factor by back substitution
    let tnorm = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);
    let mut vecs = CMatrixFloat::zeros(n, n);
    for k in 0..n {
        let lam = a[k * n + k];
        let mut y = vec![ZERO; n];
        y[k] = ONE;
        for j in (0..k).rev() {
            let mut s = ZERO;
            for l in j + 1..=k {
                s += a[j * n + l] * y[l];
            }
            let mut den = a[j * n + j] - lam;
            if den.norm() < smin {
                den = C::new(smin, 0.0);
            }
            y[j] = -s / den;
        }
        let mut x: Vec<C> = (0..n).map(|i| (0..=k).map(|l| q[i * n + l] * y[l]).sum()).collect();
        for (i, xi) in x.iter_mut().enumerate() {
            *xi *= bal.scale[i];
        }
        for &(j, mm) in bal.swaps.iter().rev() {
            x.swap(j, mm);
        }
        let nrm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (i, xi) in x.iter().enumerate() {
            vecs[(i, k)] = xi / nrm;
        }
    }
    Ok((w, Some(vecs)))
}

/// Eigenvalues of a dense complex matrix (dimension ≤ 4096).
pub fn eig_dense(m: &CMatrixFloat) -> Result<Vec<C>, NumericError> {
    eig_dense_with(m, EigConfig::default())
}

pub fn eig_dense_with(m: &CMatrixFloat, cfg: EigConfig) -> Result<Vec<C>, NumericError> {
    if m.rows() > 4096 {
        return Err(NumericError::TooLarge { dim: m.rows(), max: 4096 });
    }
    Ok(eig_impl(m, cfg, false)?.0)
}

/// Eigenvalues and unit eigenvectors via the Schur form.
pub fn eig_dense_vectors(m: &CMatrixFloat) -> Result<EigDecomposition, NumericError> {
    if m.rows() > 4096 {
        return Err(NumericError::TooLarge { dim: m.rows(), max: 4096 });
    }
    let (values, vectors) = eig_impl(m, EigConfig::default(), true)?;
    Ok(EigDecomposition { values, vectors: vectors.unwrap() })
}

/// `max_k ‖m v_k − λ_k v_k‖₂`.
pub fn max_residual(m: &CMatrixFloat, dec: &EigDecomposition) -> f64 {
    let n = m.rows();
    (0..n)
        .map(|k| {
            let v: Vec<C> = (0..n).map(|i| dec.vectors[(i, k)]).collect();
            let mv = m.mul_vec(&v);
            mv.iter().zip(&v).map(|(a, b)| (a - dec.values[k] * b).norm_sqr()).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max)
}

/// Sort eigenvalues by real part, then imaginary part.
pub fn sort_by_real(values: &mut [C]) {
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hessenberg_2x2_is_noop_and_solves() {
        let m = CMatrixFloat::from_rows(&[vec![C::new(1.0, 0.0), C::new(2.0, 0.0)], vec![C::new(3.0, 0.0), C::new(4.0, 0.0)]])
            .unwrap();
        let mut w = eig_dense(&m).unwrap();
        sort_by_real(&mut w);
        let r = 33f64.sqrt();
        assert!((w[0] - C::new((5.0 - r) / 2.0, 0.0)).norm() < 1e-13);
        assert!((w[1] - C::new((5.0 + r) / 2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn triangular_isolated_exactly() {
        let n = 6;
        let m = CMatrixFloat::from_fn(n, n, |i, j| if j <= i { C::new((i * i) as f64 + if i == j { 0.0 } else { 1.3 }, 0.2 * j as f64) } else { ZERO })
            .unwrap();
        let mut w = eig_dense(&m).unwrap();
        sort_by_real(&mut w);
        for (i, z) in w.iter().enumerate() {
            assert_eq!(*z, m[(i, i)]);
        }
    }

    #[test]
    fn rotation_eigen() {
        let m = CMatrixFloat::from_rows(&[vec![ZERO, -ONE], vec![ONE, ZERO]]).unwrap();
        let mut w = eig_dense(&m).unwrap();
        w.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((w[0] - C::new(0.0, -1.0)).norm() < 1e-14);
        assert!((w[1] - C::new(0.0, 1.0)).norm() < 1e-14);
    }
}
