use proptest::prelude::*;
use rustfft::FftPlanner;
use spectral::*;

fn c(re: f64) -> C {
    C::from(re)
}

fn potential(a: f64, b: f64, k1: C, k2: C, phi: f64) -> C {
    let (s, co) = (2.0 * phi).sin_cos();
    let num = 2.0 * k1 * k2 * C::new(a * co, -b * s) - k1 * k1 * (a * a - b * b) - k2 * k2;
    let den = C::new(b * co, -a * s);
    num / (den * den)
}

#[test]
fn fourier_coefficients_match_fft() {
    let (a, b) = (2.0, 1.0);
    let (k1, k2) = circle_couplings_from_g(a, b, 2.0, 3.0).unwrap();
    let n = 256;
    let mut buf: Vec<_> = (0..n).map(|j| potential(a, b, c(k1), c(k2), std::f64::consts::TAU * j as f64 / n as f64)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let t_max = 20;
    let coef = fourier_coefficients(a, b, c(k1), c(k2), t_max).unwrap();
    for f in -(2 * t_max as i64)..=(2 * t_max as i64) {
        let fft = buf[f.rem_euclid(n as i64) as usize] / n as f64;
        let ours = coef[(f + 2 * t_max as i64) as usize];
        assert!((fft - ours).norm() < 1e-10, "f = {f}: {fft} vs {ours}");
    }
}

#[test]
fn fourier_coefficients_negative_branch_match_fft() {
    let (a, b) = (1.0, -3.0);
    let (k1, k2) = (c(0.4), C::new(0.2, 0.1));
    let n = 256;
    let mut buf: Vec<_> = (0..n).map(|j| potential(a, b, k1, k2, std::f64::consts::TAU * j as f64 / n as f64)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let coef = fourier_coefficients(a, b, k1, k2, 20).unwrap();
    for f in -40i64..=40 {
        let fft = buf[f.rem_euclid(n as i64) as usize] / n as f64;
        assert!((fft - coef[(f + 40) as usize]).norm() < 1e-10);
    }
}

#[test]
fn singular_potential_rejected() {
    assert!(matches!(solve_periodic_s1(1.0, 0.0, c(1.0), c(1.0), 16), Err(SpectralError::SingularPotential)));
    assert!(matches!(solve_periodic_s1(0.0, 0.0, c(1.0), c(1.0), 16), Err(SpectralError::InvalidParameter(_))));
    assert!(matches!(fourier_matrix(2.0, 1.0, c(1.0), c(1.0), 15), Err(SpectralError::InvalidParameter(_))));
}

#[test]
fn free_particle_on_circle() {
    let rep = solve_periodic_s1(2.0, 1.0, c(0.0), c(0.0), 32).unwrap();
    let expected = [0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0, 16.0];
    for (e, x) in rep.lowest().iter().zip(expected) {
        assert!((e - x).norm() < 1e-10, "{e} vs {x}");
    }
    assert_eq!(rep.phase, PhaseLabel::Exact);
}

#[test]
fn morse_matrix_is_triangular_with_square_spectrum() {
    for n in [8, 32, 64] {
        let m = fourier_matrix(1.5, 1.5, c(1.0), c(0.7), n).unwrap();
        assert!(is_lower_triangular(&m));
        let rep = solve_periodic_s1(1.5, 1.5, c(1.0), c(0.7), n).unwrap();
        let mut squares: Vec<f64> = (-(n as i64 / 2)..=n as i64 / 2).map(|k| (k * k) as f64).collect();
        squares.sort_by(f64::total_cmp);
        for (e, s) in rep.eigenvalues.iter().zip(&squares) {
            assert!((e - s).norm() <= 1e-12 * s.max(1.0), "{e} vs {s}");
        }
    }
}

#[test]
fn circle_spectrum_matches_branch_union() {
    let (k1, k2) = circle_couplings_from_g(2.0, 1.0, 2.0, 3.0).unwrap();
    let rep = solve_periodic_s1(2.0, 1.0, c(k1), c(k2), 512).unwrap();
    assert!(rep.max_im <= 1e-8, "max im {}", rep.max_im);
    assert_eq!(rep.phase, PhaseLabel::Exact);
    assert_eq!(rep.matches.len(), 8);
    assert!(rep.max_rel_dev() <= 1e-6, "rel dev {}", rep.max_rel_dev());
    let lowest: Vec<f64> = rep.lowest().iter().map(|z| z.re.round()).collect();
    assert_eq!(lowest, vec![0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0, 16.0]);
}

#[test]
fn b_greater_than_a_is_descriptive() {
    let rep = solve_periodic_s1(1.0, 2.0, c(0.5), c(0.5), 64).unwrap();
    assert!(rep.notes.iter().any(|n| n.contains("b > a")));
    assert!(rep.matches.is_empty());
}

#[test]
fn square_well_limit() {
    let rep = solve_poschl_teller(1.0, 1.0, 1024).unwrap();
    for (m, e) in rep.lowest().iter().enumerate().take(5) {
        let x = (2.0 * m as f64 + 2.0).powi(2);
        assert!((e.re - x).abs() / x < 1e-4);
    }
}

#[test]
fn poschl_teller_converges() {
    let rep = solve_poschl_teller(2.0, 3.0, 4096).unwrap();
    for m in &rep.matches[..5] {
        assert!(m.rel_dev <= 1e-3, "{m:?}");
        assert!((m.closed_form - (2.0 * m.index as f64 + 5.0).powi(2)).abs() < 1e-12);
    }
    let coarse = solve_poschl_teller(2.0, 3.0, 2048).unwrap();
    for i in 0..5 {
        let ratio = coarse.matches[i].abs_dev / rep.matches[i].abs_dev;
        assert!(ratio >= 3.5, "level {i}: ratio {ratio}");
    }
}

#[test]
fn poschl_teller_rejects_bad_inputs() {
    assert!(matches!(solve_poschl_teller(0.5, 3.0, 1024), Err(SpectralError::BadCouplings(_))));
    assert!(matches!(solve_poschl_teller(2.0, 3.0, 256), Err(SpectralError::GridTooSmall { n: 256, min: MIN_GRID })));
}

#[test]
fn chi_equation_matches_closed_form() {
    let rep = solve_chi_equation([2.0, 3.0, 2.0], 0, 4096).unwrap();
    let first = &rep.matches[0];
    assert!((first.closed_form - 56.0).abs() < 1e-12);
    assert!(first.rel_dev <= 1e-3, "{first:?}");
    for m in &rep.matches[..5] {
        assert!(m.rel_dev <= 1e-3);
    }
    let coarse = solve_chi_equation([2.0, 3.0, 2.0], 0, 2048).unwrap();
    assert!(coarse.matches[0].abs_dev / first.abs_dev >= 3.5);
    assert!(rep.notes.iter().any(|n| n.contains("measure")));
}

#[test]
fn closed_form_sphere_level_equals_chi_level() {
    let levels = closed_form_energies(&EnergyModel::Sphere { ell: [c(2.0), c(3.0), c(2.0)] }, &[5.0], &[0.0]).unwrap();
    assert_eq!(levels[0].energy, 56.0);
}

#[test]
fn fd_accepts_complex_couplings() {
    let ev = fd_spectrum(C::new(2.0, 0.3), c(3.0), 512).unwrap();
    assert!(ev.iter().take(4).any(|z| z.im.abs() > 1e-6));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn morse_always_triangular(a in 0.2f64..3.0, k1 in -2.0f64..2.0, k2 in -2.0f64..2.0) {
        prop_assert!(is_lower_triangular(&fourier_matrix(a, a, c(k1), c(k2), 16).unwrap()));
    }

    #[test]
    fn circle_spectrum_real_in_exact_phase(gm in 1.0f64..4.0, gp in 1.0f64..4.0) {
        let (k1, k2) = circle_couplings_from_g(2.0, 1.0, gm, gp).unwrap();
        let rep = solve_periodic_s1(2.0, 1.0, c(k1), c(k2), 64).unwrap();
        prop_assert!(rep.max_im <= 1e-8);
    }

    #[test]
    fn fd_spectrum_is_sorted(gm in 1.0f64..4.0, gp in 1.0f64..4.0) {
        let ev = fd_spectrum(c(gm), c(gp), 128).unwrap();
        prop_assert!(ev.windows(2).all(|w| w[0].re <= w[1].re));
        prop_assert!(ev[0].re > 0.0);
    }
}
