use lie_algebra::{build_generators, casimir_element, EnvElement};
use masa::{catalog_masa, lambda_model_rows, masa_from_coeffs, MasaParams};
use numeric_core::{rat, BigRational, CRat, Scalar};
use phase_space::{vanishes_on_constraint, PhasePoly, PhaseRational};
use proptest::prelude::*;
use reduction::{
    build_a, build_hamiltonian, build_potential, build_v_matrix, momentum_map, project_env_element, Reducer,
    ReductionError, DEFAULT_SEED,
};

fn s(n: usize, i: usize) -> PhasePoly {
    PhasePoly::s(n, i)
}

fn k(n: usize, i: usize) -> PhasePoly {
    PhasePoly::k(n, i)
}

fn sc(re: i64, im: i64) -> Scalar {
    Scalar::from_crat(CRat::gauss(re, im))
}

fn su2(a: i64, b: i64) -> masa::MasaSpec {
    let p = MasaParams { a: Some(Scalar::from_int(a)), b: Some(Scalar::from_int(b)), lambda2: None };
    catalog_masa("su2ab", &p).unwrap()
}

fn lambda(l2: BigRational) -> masa::MasaSpec {
    catalog_masa("lambda", &MasaParams { lambda2: Some(l2), ..Default::default() }).unwrap()
}

fn lambda_zero() -> masa::MasaSpec {
    masa_from_coeffs(3, lambda_model_rows(&rat(0, 1)).unwrap()).unwrap()
}

fn vanishes(f: &PhaseRational) -> bool {
    vanishes_on_constraint(f, 20, DEFAULT_SEED).unwrap()
}

#[test]
fn su2ab_a_columns() {
    let (a, b) = (3, 2);
    let m = build_a(&su2(a, b));
    assert_eq!(m[0][0], s(2, 0).scale(&Scalar::i()));
    assert_eq!(m[1][0], s(2, 1).scale(&Scalar::i()));
    assert_eq!(m[0][1], &s(2, 0).scale(&sc(0, a)) + &s(2, 1).scale(&sc(b, 0)));
    assert_eq!(m[1][1], &s(2, 0).scale(&sc(b, 0)) - &s(2, 1).scale(&sc(0, a)));
}

#[test]
fn lambda_zero_a_is_diagonal_up_to_rotation() {
    let m = build_a(&lambda_zero());
    // each column is a multiple of a single s_σ
    for nu in 0..3 {
        let nonzero: Vec<usize> = (0..3).filter(|&mu| !m[mu][nu].is_zero()).collect();
        assert_eq!(nonzero.len(), 1, "column {nu}");
        assert_eq!(m[nonzero[0]][nu].total_degree(), 1);
    }
}

#[test]
fn su2ab_real_potential_by_adjugate() {
    let v = build_potential(&su2(1, 0)).unwrap();
    let expect = &PhaseRational::new((&k(2, 0) - &k(2, 1)).pow(2), &s(2, 1).pow(2).scale(&Scalar::from_int(4))).unwrap()
        + &PhaseRational::new((&k(2, 0) + &k(2, 1)).pow(2), &s(2, 0).pow(2).scale(&Scalar::from_int(4))).unwrap();
    assert!(v.equals(&expect));
}

/// Oracle built from the polar form: the Cartesian numerator carries −2ib s₁s₂.
fn su2ab_cartesian(a: &Scalar, b: &Scalar, sign: i64) -> PhaseRational {
    let (s1, s2, k1, k2) = (s(2, 0), s(2, 1), k(2, 0), k(2, 1));
    let ib = &Scalar::i() * b;
    let diff = &s1.pow(2) - &s2.pow(2);
    let cross = (&s1 * &s2).scale(&(&ib * &Scalar::from_int(2 * sign)));
    let num = &(&(&k1 * &k2).scale(&Scalar::from_int(2)) * &(&diff.scale(a) + &cross))
        - &(&k1.pow(2).scale(&(&(a * a) - &(b * b))) + &k2.pow(2));
    let den = &diff.scale(b) - &(&s1 * &s2).scale(&(&(&Scalar::i() * a) * &Scalar::from_int(2)));
    PhaseRational::new(num, &den.pow(2)).unwrap()
}

#[test]
fn su2ab_complex_potential() {
    for (a, b) in [(2, 1), (1, 3), (1, 1)] {
        let v = build_potential(&su2(a, b)).unwrap();
        let (a, b) = (Scalar::from_int(a), Scalar::from_int(b));
        assert!(vanishes(&(&v - &su2ab_cartesian(&a, &b, -1))));
        assert!(!vanishes(&(&v - &su2ab_cartesian(&a, &b, 1))));
    }
}

#[test]
fn su2ab_polar_form_at_rational_angles() {
    let (a, b) = (Scalar::from_int(2), Scalar::from_int(1));
    let v = build_potential(&su2(2, 1)).unwrap();
    let (k1, k2) = (rat(3, 2), rat(-5, 7));
    let mut checked = 0;
    for t in 1..=25i64 {
        let t = rat(t, 7);
        let one = rat(1, 1);
        let den = &one + &t * &t;
        let (c, sn) = ((&one - &t * &t) / &den, rat(2, 1) * &t / &den);
        let x: Vec<CRat> =
            [c.clone(), sn.clone(), rat(0, 1), rat(0, 1), k1.clone(), k2.clone()].into_iter().map(CRat::real).collect();
        let Ok(got) = v.eval(&x) else { continue };
        let c2 = Scalar::from_rational(&c * &c - &sn * &sn);
        let s2 = Scalar::from_rational(rat(2, 1) * &c * &sn);
        let (k1s, k2s) = (Scalar::from_rational(k1.clone()), Scalar::from_rational(k2.clone()));
        let i = Scalar::i();
        let num = &(&(&(&k1s * &k2s) * &Scalar::from_int(2)) * &(&(&a * &c2) - &(&(&i * &b) * &s2)))
            - &(&(&(&k1s * &k1s) * &(&(&a * &a) - &(&b * &b))) + &(&k2s * &k2s));
        let dd = &(&b * &c2) - &(&(&i * &a) * &s2);
        assert_eq!(got, &num * &(&dd * &dd).inv().unwrap());
        checked += 1;
    }
    assert!(checked >= 20);
}

#[test]
fn lambda_zero_potential_is_generic_sphere_model() {
    let v = build_potential(&lambda_zero()).unwrap();
    let term = |ki: usize, si: usize| PhaseRational::new(k(3, ki).pow(2), &s(3, si).pow(2)).unwrap();
    let expect = &(&term(0, 1) + &term(1, 0)) + &term(2, 2);
    assert!(v.equals(&expect));
}

#[test]
fn gram_identity_is_polynomial() {
    for m in [su2(2, 1), lambda(rat(1, 4)), lambda_zero()] {
        let r = Reducer::new(&m).unwrap();
        assert_eq!(build_v_matrix(&m).unwrap(), r.gram());
    }
}

#[test]
fn x7_maps_to_minus_l1() {
    let m = lambda(rat(1, 4));
    let basis = build_generators(3).unwrap();
    let x7 = momentum_map(basis.generator(7).unwrap(), &m).unwrap();
    assert!(x7.equals(&PhaseRational::from_poly(-&PhasePoly::angular_momentum(0))));
}

#[test]
fn u2_x2_is_minus_the_displayed_angular_momentum() {
    let m = su2(2, 1);
    let basis = build_generators(2).unwrap();
    let x2 = momentum_map(basis.generator(2).unwrap(), &m).unwrap();
    let displayed = &(&s(2, 0) * &PhasePoly::p(2, 1)) - &(&s(2, 1) * &PhasePoly::p(2, 0));
    assert!(x2.equals(&PhaseRational::from_poly(-&displayed)));
}

#[test]
fn su2ab_hats_are_minus_the_displayed_ones() {
    let (a, b) = (2, 1);
    let m = su2(a, b);
    let basis = build_generators(2).unwrap();
    let (s1, s2, k1, k2) = (s(2, 0), s(2, 1), k(2, 0), k(2, 1));
    let den = &(&s1.pow(2) - &s2.pow(2)).scale(&sc(b, 0)) - &(&s1 * &s2).scale(&sc(0, 2 * a));
    let x1_num = (&k1.scale(&sc(a, 0)) + &(&k2 * &(&s2.pow(2) - &s1.pow(2)))).scale(&Scalar::i());
    let x3_num = &(&(&s1 * &s2) * &k2).scale(&sc(0, 2)) - &k1.scale(&sc(b, 0));
    let x1 = momentum_map(basis.generator(1).unwrap(), &m).unwrap();
    let x3 = momentum_map(basis.generator(3).unwrap(), &m).unwrap();
    assert!(vanishes(&(&x1 + &PhaseRational::new(x1_num, &den).unwrap())));
    assert!(vanishes(&(&x3 + &PhaseRational::new(x3_num, &den).unwrap())));
}

#[test]
fn su2_casimir_projects_onto_h_not_twice_h() {
    let m = su2(2, 1);
    let basis = build_generators(2).unwrap();
    let c2 = casimir_element(2, &basis).unwrap();
    let proj = project_env_element(&c2, &m).unwrap();
    let h = build_hamiltonian(&m, &MasaParams::default()).unwrap().hamiltonian;
    assert!(vanishes(&(&proj - &h)));
    assert!(!vanishes(&(&proj - &h.scale(&Scalar::from_int(2)))));
}

#[test]
fn anticommutator_projects_to_twice_the_product() {
    let m = lambda(rat(1, 4));
    let r = Reducer::new(&m).unwrap();
    let e = EnvElement::generator(3).anticommutator(&EnvElement::generator(5)).unwrap();
    let expect = (&r.hat(3) * &r.hat(5)).scale(&Scalar::from_int(2));
    assert!(r.project(&e).equals(&expect));
}

#[test]
fn projection_rejects_quartic_words() {
    let e = EnvElement::monomial(&[1, 2, 3, 4], Scalar::from_int(1));
    assert!(matches!(e, Err(lie_algebra::LieError::WordTooLong { len: 4, max: 3 })));
    let cubic = EnvElement::monomial(&[1, 2, 3], Scalar::from_int(1)).unwrap();
    assert!(project_env_element(&cubic, &lambda(rat(1, 4))).is_ok());
}

#[test]
fn dependent_generators_are_degenerate() {
    let row = vec![sc(1, 0), sc(0, 0), sc(0, 0), sc(0, 0)];
    match masa_from_coeffs(2, vec![row.clone(), row]) {
        Ok(m) => assert_eq!(Reducer::new(&m).unwrap_err(), ReductionError::DegenerateMasa),
        Err(_) => {
            // the MASA constructor already refuses dependent rows
        }
    }
}

#[test]
fn lambda_hamiltonian_has_three_displayed_denominators() {
    let p = MasaParams { lambda2: Some(rat(1, 4)), ..Default::default() };
    let sys = build_hamiltonian(&lambda(rat(1, 4)), &p).unwrap();
    assert_eq!(sys.potential.p_degree(), Some(0));
    let pp = PhaseRational::from_poly(PhasePoly::p_dot_p(3));
    assert!((&(&sys.hamiltonian - &pp) - &sys.potential).normalize().is_zero());
    let shown = reduction::displayed_potential("lambda".parse().unwrap(), &p).unwrap().unwrap();
    assert_eq!(shown.den_factors().len(), 3);
    assert!(vanishes(&(&sys.potential - &shown)));
    assert_eq!(sys.integrals.len(), 3);
    assert!(sys.integrals.iter().all(|t| t.reduced.p_degree().is_some_and(|d| d <= 2)));
    assert_eq!(sys.coupling_symbols, ["k1", "k2", "k3"]);
    assert!(sys.pt.is_some());
}

#[test]
fn cartan_od_noncompact_limit_splits() {
    let p = MasaParams { a: Some(Scalar::from_int(0)), b: Some(Scalar::from_ratio(1, 2)), lambda2: None };
    let m = catalog_masa("cartan_od", &p).unwrap();
    let v = build_hamiltonian(&m, &p).unwrap().potential;
    let (s2, s3, k2, k3) = (s(3, 1), s(3, 2), k(3, 1), k(3, 2));
    let i = Scalar::i();
    let half = Scalar::from_ratio(-1, 2);
    let expect = &(&PhaseRational::new(k(3, 0).pow(2), &s(3, 0).pow(2)).unwrap()
        + &PhaseRational::new((&k2 - &k3.scale(&i)).pow(2).scale(&half), &(&s2 - &s3).pow(2)).unwrap())
        + &PhaseRational::new((&k2 + &k3.scale(&i)).pow(2).scale(&half), &(&s2 + &s3).pow(2)).unwrap();
    assert!(vanishes(&(&v - &expect)));
}

#[test]
fn cartan_od_orthogonal_limit() {
    let p = MasaParams { a: Some(Scalar::from_int(1)), b: Some(Scalar::from_ratio(1, 2)), lambda2: None };
    let m = catalog_masa("cartan_od", &p).unwrap();
    let v = build_potential(&m).unwrap();
    let (s2, s3, k2, k3) = (s(3, 1), s(3, 2), k(3, 1), k(3, 2));
    let i = Scalar::i();
    let w = &s2 + &s3.scale(&i);
    let wb = &s2 - &s3.scale(&i);
    let expect = &(&PhaseRational::new(k(3, 0).pow(2), &s(3, 0).pow(2)).unwrap()
        + &PhaseRational::new((&k2 * &k3).scale(&Scalar::from_int(2)), &w.pow(2)).unwrap())
        - &PhaseRational::new(&k2.pow(2) * &wb, &w.pow(3)).unwrap();
    assert!(vanishes(&(&v - &expect)));
}

#[test]
fn degenerate_hamiltonian_is_the_reduction() {
    for name in ["degenerate_plus", "degenerate_minus"] {
        let m = catalog_masa(name, &MasaParams::default()).unwrap();
        let sys = build_hamiltonian(&m, &MasaParams::default()).unwrap();
        assert!(sys.potential.equals(&build_potential(&m).unwrap()));
        assert_eq!(sys.integrals.len(), 1);
    }
}

#[test]
fn collapsed_lambda_potential_gives_alpha_squared() {
    // V_λ at λ² = ½: D₁ = D₂ = D/2 and D₃ = (i/√2) D
    let r2 = Scalar::sqrt_rational(&rat(2, 1)).unwrap();
    let il = &Scalar::i() * &r2.scale_crat(&CRat::from_ratio(1, 2));
    let half = Scalar::from_ratio(1, 2);
    let d1 = &(&s(3, 0).scale(&half) - &s(3, 1).scale(&half)) + &s(3, 2).scale(&il);
    let d3 = &(&s(3, 0) - &s(3, 1)).scale(&il) - &s(3, 2);
    let v_l = &(&PhaseRational::new(k(3, 0).pow(2), &d1.pow(2)).unwrap()
        + &PhaseRational::new(k(3, 1).pow(2), &d1.pow(2)).unwrap())
        + &PhaseRational::new(k(3, 2).pow(2), &d3.pow(2)).unwrap();
    let h = reduction::degenerate_hamiltonian(1).unwrap();
    let pp = PhaseRational::from_poly(PhasePoly::p_dot_p(3));
    assert!((&(&h - &pp) - &v_l).normalize().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn su2ab_potential_for_any_parameters(a in -4i64..=4, b in -4i64..=4) {
        prop_assume!(a != 0 || b != 0);
        let (sa, sb) = (Scalar::from_int(a), Scalar::from_int(b));
        let v = build_potential(&su2(a, b)).unwrap();
        prop_assert!(vanishes(&(&v - &su2ab_cartesian(&sa, &sb, -1))));
    }
}
