use numeric_core::{
    eig_dense, eig_dense_vectors, eig_sym_tridiagonal, mat_exp_numeric, max_residual, sort_by_real, CMatrixFloat,
    Complex64,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn random_matrix_vec(n: usize, seed: u64) -> CMatrixFloat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<C> = (0..n * n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    CMatrixFloat::new(n, n, data).unwrap()
}

/// Greedy multiset distance: every value of `a` has a partner in `b` within `tol`.
fn same_multiset(a: &[C], b: &[C], tol: f64) -> bool {
    let mut used = vec![false; b.len()];
    a.len() == b.len()
        && a.iter().all(|x| {
            let best = b
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .min_by(|(_, p), (_, q)| (*p - x).norm().total_cmp(&(*q - x).norm()));
            match best {
                Some((j, y)) if (y - x).norm() <= tol => {
                    used[j] = true;
                    true
                }
                _ => false,
            }
        })
}

#[test]
fn diagonal_case() {
    let m = CMatrixFloat::diag(&[c(1.0, 0.0), c(2.0, 1.0)]);
    let w = eig_dense(&m).unwrap();
    assert!(same_multiset(&w, &[c(1.0, 0.0), c(2.0, 1.0)], 0.0));
}

#[test]
fn nilpotent_jordan_block() {
    let m = CMatrixFloat::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
    let w = eig_dense(&m).unwrap();
    assert_eq!(w, vec![c(0.0, 0.0), c(0.0, 0.0)]);
}

#[test]
fn characteristic_roots() {
    let m = CMatrixFloat::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0), c(4.0, 0.0)]]).unwrap();
    let r = 33f64.sqrt();
    let w = eig_dense(&m).unwrap();
    assert!(same_multiset(&w, &[c((5.0 - r) / 2.0, 0.0), c((5.0 + r) / 2.0, 0.0)], 1e-13));
}

#[test]
fn residuals_random_dense() {
    for (n, seed) in [(8, 1), (40, 2), (120, 3), (300, 4)] {
        let m = random_matrix_vec(n, seed);
        let dec = eig_dense_vectors(&m).unwrap();
        assert_eq!(dec.values.len(), n);
        let res = max_residual(&m, &dec);
        assert!(res <= 1e-10 * m.norm2(), "n={n} residual {res}");
    }
}

#[test]
#[ignore = "takes tens of seconds; run with --ignored"]
fn residuals_at_1024() {
    let m = random_matrix_vec(1024, 11);
    let dec = eig_dense_vectors(&m).unwrap();
    assert!(max_residual(&m, &dec) <= 1e-10 * m.norm2());
}

#[test]
fn residuals_badly_scaled() {
    let n = 30;
    let base = random_matrix_vec(n, 9);
    let m = CMatrixFloat::from_fn(n, n, |i, j| base[(i, j)] * 10f64.powi(i as i32 - j as i32)).unwrap();
    let dec = eig_dense_vectors(&m).unwrap();
    assert!(max_residual(&m, &dec) <= 1e-10 * m.norm2());
}

#[test]
fn upper_triangular_with_vectors() {
    let n = 12;
    let m = CMatrixFloat::from_fn(n, n, |i, j| if j >= i { c(1.0 + i as f64, 0.5 * j as f64) } else { c(0.0, 0.0) })
        .unwrap();
    let dec = eig_dense_vectors(&m).unwrap();
    assert!(max_residual(&m, &dec) <= 1e-10 * m.norm2());
}

#[test]
fn similarity_invariance() {
    for seed in 0..5u64 {
        let n = 25;
        let m = random_matrix_vec(n, 100 + seed);
        let p = &CMatrixFloat::identity(n) + &random_matrix_vec(n, 200 + seed).scale(c(0.3, 0.0));
        let pinv = p.inverse().unwrap();
        let sim = &(&pinv * &m) * &p;
        let a = eig_dense(&m).unwrap();
        let b = eig_dense(&sim).unwrap();
        assert!(same_multiset(&a, &b, 1e-8), "seed {seed}");
    }
}

#[test]
fn tridiagonal_matches_dense() {
    let n = 60;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d: Vec<C> = (0..n).map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-0.5..0.5))).collect();
    let e: Vec<C> = (0..n - 1).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-0.2..0.2))).collect();
    let m = CMatrixFloat::from_fn(n, n, |i, j| {
        if i == j {
            d[i]
        } else if i + 1 == j {
            e[i]
        } else if j + 1 == i {
            e[j]
        } else {
            c(0.0, 0.0)
        }
    })
    .unwrap();
    let a = eig_sym_tridiagonal(&d, &e).unwrap();
    let b = eig_dense(&m).unwrap();
    assert!(same_multiset(&a, &b, 1e-10));
}

#[test]
fn exp_of_zero_is_identity() {
    let e = mat_exp_numeric(&CMatrixFloat::zeros(4, 4)).unwrap();
    assert_eq!(e, CMatrixFloat::identity(4));
}

#[test]
fn exp_euler() {
    let e = mat_exp_numeric(&CMatrixFloat::diag(&[c(0.0, std::f64::consts::PI)])).unwrap();
    assert!((e[(0, 0)] - c(-1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn exp_su2_cartan_quarter_turn() {
    // x·Z₂ with Z₂ = iσ₃ at x = π/2
    let x = std::f64::consts::FRAC_PI_2;
    let m = CMatrixFloat::diag(&[c(0.0, x), c(0.0, -x)]);
    let e = mat_exp_numeric(&m).unwrap();
    let expect = CMatrixFloat::diag(&[c(0.0, 1.0), c(0.0, -1.0)]);
    assert!((&e - &expect).max_abs() < 1e-12);
}

#[test]
fn exp_relative_error_against_eigendecomposition() {
    for seed in 0..10u64 {
        let n = 5;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d: Vec<C> = (0..n).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        let p = &CMatrixFloat::identity(n) + &random_matrix_vec(n, 300 + seed).scale(c(0.2, 0.0));
        let pinv = p.inverse().unwrap();
        let m = &(&p * &CMatrixFloat::diag(&d)) * &pinv;
        if m.norm_fro() > 10.0 {
            continue;
        }
        let exact = &(&p * &CMatrixFloat::diag(&d.iter().map(|z| z.exp()).collect::<Vec<_>>())) * &pinv;
        let got = mat_exp_numeric(&m).unwrap();
        let rel = (&got - &exact).norm_fro() / exact.norm_fro();
        assert!(rel <= 1e-12, "seed {seed}: {rel}");
    }
}

proptest! {
    #[test]
    fn exp_times_exp_neg_is_identity(entries in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 9)) {
        let m = CMatrixFloat::new(3, 3, entries.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap();
        let prod = &mat_exp_numeric(&m).unwrap() * &mat_exp_numeric(&m.scale(c(-1.0, 0.0))).unwrap();
        prop_assert!((&prod - &CMatrixFloat::identity(3)).max_abs() < 1e-10);
    }

    #[test]
    fn eigenvalue_count_and_trace(seed in 0u64..1000, n in 1usize..20) {
        let m = random_matrix_vec(n, seed);
        let mut w = eig_dense(&m).unwrap();
        prop_assert_eq!(w.len(), n);
        let tr: C = (0..n).map(|i| m[(i, i)]).sum();
        let sum: C = w.iter().sum();
        prop_assert!((tr - sum).norm() < 1e-9 * (1.0 + n as f64));
        sort_by_real(&mut w);
    }
}
