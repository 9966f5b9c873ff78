use masa::{catalog_masa, MasaParams};
use numeric_core::{rat, ExecMode, Scalar};
use proptest::prelude::*;
use reduction::{
    coordinate_map, jacobian_check, racah_structure_report, verify_coordinate_map, LambdaConstants, ReductionError,
    DEFAULT_SEED,
};

fn p_lambda() -> MasaParams {
    MasaParams { lambda2: Some(rat(1, 4)), ..Default::default() }
}

fn catalog() -> Vec<masa::MasaSpec> {
    let su2 = MasaParams { a: Some(Scalar::from_int(2)), b: Some(Scalar::from_int(1)), lambda2: None };
    let od = MasaParams { a: Some(Scalar::from_int(1)), b: Some(Scalar::from_ratio(1, 2)), lambda2: None };
    vec![
        catalog_masa("su2ab", &su2).unwrap(),
        catalog_masa("lambda", &p_lambda()).unwrap(),
        catalog_masa("cartan_od", &od).unwrap(),
        catalog_masa("nilpotent", &MasaParams::default()).unwrap(),
        catalog_masa("degenerate_plus", &MasaParams::default()).unwrap(),
    ]
}

#[test]
fn lambda_racah_structure() {
    let k = [rat(1, 2), rat(1, 3), rat(-2, 5)];
    let rep = racah_structure_report("lambda", &p_lambda(), &k, DEFAULT_SEED, ExecMode::Parallel).unwrap();
    assert!(rep.dependency_holds());
    assert!(!rep.t12_zero);
    assert_eq!(rep.fits.len(), 3);
    for fit in &rep.fits {
        assert_eq!(fit.points, rep.points);
        assert!(fit.points > fit.monomials.len());
        for (m, _) in fit.support() {
            // only products of at most two integrals beside T12 itself
            assert!(m.split(' ').count() <= 3, "{}: {m}", fit.target);
        }
    }
    let support = |i: usize| -> Vec<(String, String)> {
        rep.fits[i].support().into_iter().map(|(m, c)| (m.to_string(), c.to_string())).collect()
    };
    let has = |i: usize, m: &str, c: &str| support(i).contains(&(m.to_string(), c.to_string()));
    assert!(has(0, "T1 T2", "4") && has(0, "T1 T3", "-4"));
    assert!(has(1, "T1 T2", "-4") && has(1, "T2 T3", "4"));
    assert!(has(2, "T1 T2 T3", "8") && has(2, "T1^2", "-2"));
    assert_eq!(support(2).len(), 11);
}

#[test]
fn racah_needs_three_integrals() {
    let su2 = MasaParams { a: Some(Scalar::from_int(1)), b: Some(Scalar::from_int(0)), lambda2: None };
    let res = racah_structure_report("su2ab", &su2, &[rat(1, 2), rat(1, 3)], DEFAULT_SEED, ExecMode::Sequential);
    assert!(matches!(res, Err(ReductionError::NoAlgebra(_))));
    let res = racah_structure_report("degenerate_plus", &MasaParams::default(), &vec![rat(1, 1); 3], 1, ExecMode::Sequential);
    assert!(matches!(res, Err(ReductionError::NoAlgebra(_))));
}

#[test]
fn lambda_constants() {
    let c = LambdaConstants::new(&rat(1, 4)).unwrap();
    assert_eq!(c.d, Scalar::from_ratio(1, 2));
    assert_eq!(&c.lam * &c.lam, Scalar::from_ratio(1, 4));
    assert!(LambdaConstants::new(&rat(1, 2)).is_err());
    assert!(LambdaConstants::new(&rat(-1, 4)).is_err());
}

#[test]
fn coordinate_map_at_lambda_zero() {
    let (_, cos_chi) = coordinate_map(0.0, [0.0, 0.0, 1.0]).unwrap();
    assert!((cos_chi.re.abs() - 1.0).abs() < 1e-14 && cos_chi.im.abs() < 1e-14);
    let (cos2xi, cos_chi) = coordinate_map(0.0, [1.0, 0.0, 0.0]).unwrap();
    assert!(cos_chi.norm() < 1e-14);
    assert!((cos2xi.re.abs() - 1.0).abs() < 1e-14);
    assert!(coordinate_map(0.5, [1.0, 0.0, 0.0]).is_err());
}

#[test]
fn separated_form_matches_potential() {
    for l2 in [0.0, 0.1, 0.25, 0.4] {
        let rep = verify_coordinate_map(l2, [1.0, 0.7, -1.3], DEFAULT_SEED).unwrap();
        assert!(rep.points >= 20);
        assert!(rep.passes(1e-10), "λ² = {l2}: {rep:?}");
    }
}

#[test]
fn jacobian_at_origin() {
    for m in catalog() {
        let n = m.n();
        let mut s = vec![0.0; n];
        s[0] = 0.6;
        s[1] = 0.8;
        let rep = jacobian_check(&m, &vec![0.0; n], &s).unwrap();
        assert!(rep.residuals["v_gram"] < 1e-12, "{rep:?}");
        assert!(rep.passes(1e-9), "{rep:?}");
    }
}

#[test]
fn jacobian_rejects_bad_dimensions() {
    let m = &catalog()[1];
    assert!(jacobian_check(m, &[0.0; 2], &[1.0, 0.0, 0.0]).is_err());
}

fn unit(v: Vec<f64>) -> Vec<f64> {
    let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / r).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn jacobian_identities_hold(
        x in prop::collection::vec(-0.5f64..0.5, 3),
        s in prop::collection::vec(0.2f64..1.0, 3),
        flip in prop::collection::vec(any::<bool>(), 3),
    ) {
        let s: Vec<f64> = s.iter().zip(&flip).map(|(v, &f)| if f { -v } else { *v }).collect();
        for m in catalog() {
            let n = m.n();
            let rep = jacobian_check(&m, &x[..n], &unit(s[..n].to_vec())).unwrap();
            prop_assert!(rep.passes(1e-9), "{:?}", rep);
        }
    }

    #[test]
    fn separated_form_for_any_admissible_lambda(l2 in 0.0f64..0.45, k1 in 0.1f64..2.0, k2 in -2.0f64..2.0) {
        let rep = verify_coordinate_map(l2, [k1, k2, 0.5], 7).unwrap();
        prop_assert!(rep.passes(1e-8), "{:?}", rep);
    }
}
