use numeric_core::CRat;
use proptest::prelude::*;
use spectral::*;

fn c(re: f64) -> C {
    C::from(re)
}

#[test]
fn free_circle_couplings_are_one() {
    let cm = coupling_maps(&ModelParams::Circle { a: 1.0, b: 0.0, k1: c(0.0), k2: c(0.0) });
    assert_eq!(cm.g_minus, Some(c(1.0)));
    assert_eq!(cm.g_plus, Some(c(1.0)));
    assert!(cm.is_real());
}

#[test]
fn zero_k3_gives_unit_ell3() {
    let cm = coupling_maps(&ModelParams::Sphere { lambda2: 0.25, k: [c(0.5), c(0.3), c(0.0)] });
    assert_eq!(cm.ell.unwrap()[2], c(1.0));
}

#[test]
fn degenerate_point_has_no_ell() {
    let cm = coupling_maps(&ModelParams::Sphere { lambda2: 0.5, k: [c(0.5), c(0.3), c(0.2)] });
    assert!(cm.ell.is_none());
    assert!(coupling_maps(&ModelParams::Circle { a: 1.0, b: 1.0, k1: c(1.0), k2: c(1.0) }).g_minus.is_none());
}

#[test]
fn inversion_reproduces_closed_form_couplings() {
    let (k1, k2) = circle_couplings_from_g(2.0, 1.0, 2.0, 3.0).unwrap();
    let (s2, s6, s3) = (2f64.sqrt(), 6f64.sqrt(), 3f64.sqrt());
    assert!((k1 - (3.0 * s2 + s6) / s3).abs() < 1e-12);
    assert!((k2 - (3.0 * s2 - s6)).abs() < 1e-12);
    let cm = coupling_maps(&ModelParams::Circle { a: 2.0, b: 1.0, k1: c(k1), k2: c(k2) });
    let (gm, gp) = cm.g_real().unwrap();
    assert!((gm - 2.0).abs() < 1e-12 && (gp - 3.0).abs() < 1e-12);
}

#[test]
fn inversion_rejects_bad_domain() {
    assert!(matches!(circle_couplings_from_g(1.0, 2.0, 2.0, 3.0), Err(SpectralError::InvalidParameter(_))));
    assert!(matches!(circle_couplings_from_g(2.0, 1.0, 0.5, 3.0), Err(SpectralError::BadCouplings(_))));
}

#[test]
fn sphere_couplings_go_complex_past_one_half() {
    let cm = coupling_maps(&ModelParams::Sphere { lambda2: 0.6, k: [c(0.5), c(1.0 / 3.0), c(0.25)] });
    assert!(!cm.is_real());
    assert!(cm.ell_real().is_none());
}

#[test]
fn circle_energies() {
    let levels = closed_form_energies(&EnergyModel::Circle { g_minus: c(2.0), g_plus: c(3.0) }, &[0.0, 1.0, 2.0], &[]).unwrap();
    let e: Vec<f64> = levels.iter().map(|l| l.energy).collect();
    assert_eq!(e, vec![25.0, 49.0, 81.0]);
}

#[test]
fn sphere_energies() {
    let model = EnergyModel::Sphere { ell: [c(2.0), c(3.0), c(1.0)] };
    let levels = closed_form_energies(&model, &[0.0, 1.0], &[0.0, 1.0]).unwrap();
    assert_eq!(levels[0].energy, 12.0);
    for l in &levels {
        let x = 2.0 + 3.0 - 1.0 + 2.0 * l.m - 2.0 * l.n;
        assert_eq!(l.energy, (x - 1.0) * x);
    }
    let m1n1 = levels.iter().find(|l| l.m == 1.0 && l.n == 1.0).unwrap();
    assert_eq!(m1n1.energy, 12.0);
}

#[test]
fn complex_couplings_have_no_closed_form() {
    let model = EnergyModel::Circle { g_minus: C::new(2.0, 0.5), g_plus: c(3.0) };
    assert!(matches!(closed_form_energies(&model, &[0.0], &[]), Err(SpectralError::ComplexCouplings)));
}

#[test]
fn circle_union_contains_both_families() {
    let u = circle_level_union(2.0, 3.0, 8);
    for n in 0..4 {
        let five = (2.0 * n as f64 + 5.0).powi(2);
        let even = (2.0 * n as f64).powi(2);
        assert!(u.iter().any(|(v, _)| *v == five));
        assert!(u.iter().any(|(v, _)| *v == even));
    }
}

#[test]
fn hypergeometric_examples() {
    let x = C::new(0.3, -0.2);
    assert_eq!(hyp2f1_terminating(0, c(5.0), c(2.5), x).unwrap(), c(1.0));
    let one = hyp2f1_terminating(-1, C::new(1.5, 1.0), c(2.0), x).unwrap();
    assert!((one - (c(1.0) - C::new(1.5, 1.0) * x / 2.0)).norm() < 1e-15);
    let v = hyp2f1_terminating(-2, c(5.0), c(2.5), c(1.0)).unwrap();
    assert!((v - 3.0 / 7.0).norm() < 1e-15);
}

#[test]
fn hypergeometric_exact() {
    let v = hyp2f1_exact(-2, &CRat::from_int(5), &CRat::from_ratio(5, 2), &CRat::from_int(1)).unwrap();
    assert_eq!(v, CRat::from_ratio(3, 7));
}

#[test]
fn hypergeometric_errors() {
    assert!(matches!(hyp2f1_terminating(-3, c(1.0), c(-1.0), c(0.5)), Err(SpectralError::PoleInC(_))));
    assert!(hyp2f1_terminating(-1, c(1.0), c(-1.0), c(0.5)).is_ok());
    assert!(matches!(hyp2f1_terminating(2, c(1.0), c(1.0), c(0.5)), Err(SpectralError::NonTerminating(_))));
    assert!(matches!(hyp2f1_exact(-2, &CRat::from_int(1), &CRat::from_int(-1), &CRat::from_int(1)), Err(SpectralError::PoleInC(_))));
}

#[test]
fn bessel_trivial_zeros() {
    assert_eq!(bessel_series_psi(c(2.0), 1, c(0.0), 30).unwrap().value, c(0.0));
    for q in 0..4 {
        for z in [0.3, 1.0, 2.5] {
            assert_eq!(bessel_series_psi(c(0.0), q, c(z), 30).unwrap().value, c(0.0));
        }
    }
    assert!(bessel_series_psi(c(1.0), 0, c(1.0), 0).is_err());
}

#[test]
fn bessel_ode_residual_small() {
    let r = bessel_ode_residual(c(2.0), 1, c(0.5), 30).unwrap();
    assert!(r < 1e-10, "residual {r}");
}

#[test]
fn bessel_q0_is_sine() {
    // q = 0 sums to sin(αz)/√π
    let (alpha, z) = (1.7, 0.9);
    let v = bessel_series_psi(c(alpha), 0, c(z), 40).unwrap().value;
    let expected = (alpha * z).sin() / std::f64::consts::PI.sqrt();
    assert!((v.re - expected).abs() < 1e-14, "{v} vs {expected}");
    let s = bessel_series_psi(c(alpha), 0, c(z), 40).unwrap();
    assert!((s.d1.re - alpha * (alpha * z).cos() / std::f64::consts::PI.sqrt()).abs() < 1e-13);
    assert!(s.tail_bound < 1e-15);
}

proptest! {
    #[test]
    fn circle_coupling_invariant(a in 1.1f64..4.0, b in -1.0f64..1.0, k1 in -2.0f64..2.0, k2 in -2.0f64..2.0) {
        let cm = coupling_maps(&ModelParams::Circle { a, b, k1: c(k1), k2: c(k2) });
        let d = a * a - b * b;
        for (g, sign) in [(cm.g_minus.unwrap(), -1.0), (cm.g_plus.unwrap(), 1.0)] {
            let rhs = (d.sqrt() * k1 + sign * k2).powi(2) / (4.0 * d);
            prop_assert!((g * (g - 1.0) - rhs).norm() < 1e-12 * rhs.max(1.0));
        }
    }

    #[test]
    fn sphere_coupling_invariant(l2 in 0.0f64..0.45, k in proptest::array::uniform3(-2.0f64..2.0)) {
        let cm = coupling_maps(&ModelParams::Sphere { lambda2: l2, k: k.map(c) });
        let ell = cm.ell.unwrap();
        for (l, kk) in ell.iter().zip(k) {
            let expected = 0.5 * (1.0 + (1.0 + 4.0 * kk * kk / (1.0 - 2.0 * l2)).sqrt());
            prop_assert!((l - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn inversion_round_trip(a in 1.1f64..4.0, b in -1.0f64..1.0, gm in 1.0f64..5.0, gp in 1.0f64..5.0) {
        let (k1, k2) = circle_couplings_from_g(a, b, gm, gp).unwrap();
        let cm = coupling_maps(&ModelParams::Circle { a, b, k1: c(k1), k2: c(k2) });
        let (m, p) = cm.g_real().unwrap();
        prop_assert!((m - gm).abs() < 1e-9 && (p - gp).abs() < 1e-9);
    }

    #[test]
    fn bessel_residual_property(alpha in 0.5f64..3.0, q in 0u32..4, z in 0.3f64..1.5) {
        prop_assert!(bessel_ode_residual(c(alpha), q, c(z), 40).unwrap() < 1e-9);
    }
}
