use num_traits::Zero;
use numeric_core::{rat, CRat, ExecMode, Scalar};
use phase_space::{
    canonical_bracket_jet, check_identity, dirac_bracket, dirac_bracket_jet, poisson_bracket, sample_constraint_point,
    vanishes_on_constraint, ConstraintPoint, ConstraintSampler, PhasePoly, PhaseRational,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type R = PhaseRational;

fn r(p: PhasePoly) -> R {
    R::from_poly(p)
}

fn q(v: &[(i64, i64)]) -> Vec<numeric_core::BigRational> {
    v.iter().map(|&(a, b)| rat(a, b)).collect()
}

fn random_poly(n: usize, seed: u64, terms: usize, max_exp: u8) -> PhasePoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = PhasePoly::zero(n);
    for _ in 0..terms {
        let mut m = PhasePoly::constant(n, Scalar::from_crat(CRat::gauss(rng.gen_range(-5..=5), rng.gen_range(-2..=2))));
        for v in 0..3 * n {
            let e = rng.gen_range(0..=max_exp);
            if e > 0 && rng.gen_bool(0.4) {
                m = &m * &var(n, v).pow(e as u32);
            }
        }
        p = &p + &m;
    }
    p
}

fn var(n: usize, idx: usize) -> PhasePoly {
    PhasePoly::var(n, phase_space::Var::from_index(n, idx))
}

#[test]
fn stereographic_examples() {
    let pt = ConstraintPoint::from_stereographic(&q(&[(1, 1), (1, 1)]), &q(&[(1, 1), (0, 1), (0, 1)]), q(&[(1, 1); 3])).unwrap();
    assert_eq!(pt.s(), q(&[(2, 3), (2, 3), (1, 3)]).as_slice());
    assert_eq!(pt.p(), q(&[(5, 9), (-4, 9), (-2, 9)]).as_slice());
    let pole = ConstraintPoint::from_stereographic(&q(&[(0, 1), (0, 1)]), &q(&[(0, 1); 3]), q(&[(1, 1); 3])).unwrap();
    assert_eq!(pole.s(), q(&[(0, 1), (0, 1), (-1, 1)]).as_slice());
}

#[test]
fn sampled_points_satisfy_constraints() {
    let mut s = ConstraintSampler::new(3, 7);
    for _ in 0..50 {
        let pt = s.next_point();
        let x = pt.values();
        assert!(PhasePoly::constraint_sphere(3).eval(&x).is_zero());
        assert!(PhasePoly::constraint_tangent(3).eval(&x).is_zero());
    }
    assert_eq!(sample_constraint_point(3, 4).unwrap(), sample_constraint_point(3, 4).unwrap());
    assert!(sample_constraint_point(1, 1).is_err());
}

#[test]
fn canonical_pair() {
    let b = poisson_bracket(&r(PhasePoly::s(3, 0)), &r(PhasePoly::p(3, 0))).unwrap();
    assert!(b.equals(&R::one(3)));
    let k = poisson_bracket(&r(PhasePoly::k(3, 0)), &r(PhasePoly::p(3, 0))).unwrap();
    assert!(k.is_zero());
}

#[test]
fn angular_momentum_algebra() {
    let l = |i| r(PhasePoly::angular_momentum(i));
    assert!(poisson_bracket(&l(0), &l(1)).unwrap().equals(&l(2)));
    assert!(poisson_bracket(&l(1), &l(2)).unwrap().equals(&l(0)));
    assert!(poisson_bracket(&l(2), &l(0)).unwrap().equals(&l(1)));
}

#[test]
fn dimension_mismatch() {
    assert!(poisson_bracket(&R::one(2), &R::one(3)).is_err());
}

#[test]
fn dirac_of_canonical_pair() {
    let b = dirac_bracket(&r(PhasePoly::s(3, 0)), &r(PhasePoly::p(3, 0))).unwrap();
    let expect = &R::one(3) - &R::new(PhasePoly::s(3, 0).pow(2), &PhasePoly::s_dot_s(3)).unwrap();
    assert!(b.equals(&expect));
}

#[test]
fn dirac_kills_constraints_identically() {
    for seed in 0..20 {
        let f = r(random_poly(3, seed, 4, 2));
        for c in [PhasePoly::constraint_sphere(3), PhasePoly::constraint_tangent(3)] {
            let b = dirac_bracket(&r(c.clone()), &f).unwrap();
            assert!(b.is_zero(), "seed {seed}");
            assert!(vanishes_on_constraint(&b, 20, seed).unwrap());
        }
    }
}

#[test]
fn vanishing_examples() {
    assert!(vanishes_on_constraint(&r(PhasePoly::constraint_sphere(3)), 20, 1).unwrap());
    assert!(!vanishes_on_constraint(&r(PhasePoly::s(3, 0)), 20, 1).unwrap());
    assert!(vanishes_on_constraint(&r(PhasePoly::constraint_tangent(2)), 20, 1).unwrap());
}

#[test]
fn ideal_membership_agrees() {
    let n = 3;
    for seed in 0..20 {
        let alpha = random_poly(n, 100 + seed, 3, 2);
        let beta = random_poly(n, 200 + seed, 3, 2);
        let member = &(&alpha * &PhasePoly::constraint_sphere(n)) + &(&beta * &PhasePoly::constraint_tangent(n));
        assert!(vanishes_on_constraint(&r(member.clone()), 20, seed).unwrap(), "member {seed}");
        // nonzero polynomial in k and p₁ only, shifted by a member
        let mut rng = ChaCha8Rng::seed_from_u64(300 + seed);
        let mut g = PhasePoly::constant(n, Scalar::from_int(rng.gen_range(1..5)));
        g = &g + &(&PhasePoly::k(n, 0) * &PhasePoly::p(n, 0).pow(rng.gen_range(1..3)));
        assert!(!vanishes_on_constraint(&r(&g + &member), 20, seed).unwrap(), "non-member {seed}");
    }
}

#[test]
fn rational_arithmetic() {
    let n = 3;
    let s1 = PhasePoly::s(n, 0);
    let a = R::new(PhasePoly::one(n), &s1).unwrap();
    let b = R::new(PhasePoly::k(n, 0), &s1.pow(2)).unwrap();
    let sum = &a + &b;
    assert_eq!(sum.den_factors(), &[(s1.clone(), 2)]);
    let prod = &(&sum * &r(s1.pow(2))).normalize();
    assert!(prod.is_polynomial());
    assert!(prod.equals(&r(&s1 + &PhasePoly::k(n, 0))));
    let inv = sum.recip().unwrap();
    assert!((&inv * &sum).normalize().equals(&R::one(n)));
}

#[test]
fn denominator_constants_move_to_numerator() {
    let n = 2;
    let d = PhasePoly::s(n, 0).scale(&Scalar::from_int(4));
    let f = R::new(PhasePoly::one(n), &d).unwrap();
    assert_eq!(f.den_factors(), &[(PhasePoly::s(n, 0), 1)]);
    assert_eq!(f.num().as_constant(), Some(Scalar::from_ratio(1, 4)));
}

#[test]
fn exact_division() {
    let n = 3;
    let a = random_poly(n, 5, 4, 2);
    let b = &PhasePoly::s(n, 0) + &PhasePoly::s(n, 1).scale(&Scalar::i());
    assert_eq!((&a * &b).try_div_exact(&b), Some(a.clone()));
    assert_eq!((&(&a * &b) + &PhasePoly::one(n)).try_div_exact(&b), None);
}

#[test]
fn derivative_quotient_rule() {
    let n = 3;
    let num = random_poly(n, 9, 4, 2);
    let den = &PhasePoly::s(n, 0) + &PhasePoly::s(n, 2).scale(&Scalar::from_int(3));
    let f = R::new(num.clone(), &den.pow(2)).unwrap();
    for idx in 0..9 {
        // f·den² = num, differentiated both ways
        let lhs = &(&f.derivative(idx) * &r(den.pow(2))) + &(&f * &r(den.pow(2).derivative(idx)));
        assert!(lhs.equals(&r(num.derivative(idx))), "idx {idx}");
    }
}

#[test]
fn jets_match_symbolic_derivatives() {
    let n = 3;
    let num = random_poly(n, 11, 5, 2);
    let den = &(&PhasePoly::s(n, 0) + &PhasePoly::p(n, 1)) + &PhasePoly::k(n, 2).scale(&Scalar::from_ratio(1, 2));
    let f = R::new(num, &den).unwrap();
    let mut s = ConstraintSampler::new(n, 3);
    for _ in 0..5 {
        let x = s.next_point().values();
        let j = f.jet(&x, 2).unwrap();
        assert_eq!(j.value(), &f.eval(&x).unwrap());
        for a in 0..9 {
            assert_eq!(j.grad(a), &f.derivative(a).eval(&x).unwrap());
            for b in 0..9 {
                assert_eq!(j.hess(a, b), &f.derivative(a).derivative(b).eval(&x).unwrap(), "({a},{b})");
            }
        }
    }
}

#[test]
fn pointwise_brackets_match_symbolic() {
    let n = 3;
    let f = R::new(random_poly(n, 21, 4, 2), &(&PhasePoly::s(n, 1) + &PhasePoly::one(n).scale(&Scalar::from_int(3)))).unwrap();
    let g = r(random_poly(n, 22, 4, 2));
    let pb = poisson_bracket(&f, &g).unwrap();
    let db = dirac_bracket(&f, &g).unwrap();
    let mut s = ConstraintSampler::new(n, 4);
    for _ in 0..5 {
        let x = s.next_point().values();
        let (fj, gj) = (f.jet(&x, 2).unwrap(), g.jet(&x, 2).unwrap());
        let cj = canonical_bracket_jet(&fj, &gj, n).unwrap();
        assert_eq!(cj.value(), &pb.eval(&x).unwrap());
        for a in 0..9 {
            assert_eq!(cj.grad(a), &pb.derivative(a).eval(&x).unwrap());
        }
        let dj = dirac_bracket_jet(&fj, &gj, n, &x).unwrap();
        assert_eq!(dj.value(), &db.eval(&x).unwrap());
        for a in 0..9 {
            assert_eq!(dj.grad(a), &db.derivative(a).eval(&x).unwrap());
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    let f = r(&PhasePoly::constraint_sphere(3) * &random_poly(3, 1, 5, 2));
    for mode in [ExecMode::Parallel, ExecMode::Sequential] {
        let mut s = ConstraintSampler::new(3, 42);
        let rep = check_identity(&mut s, 40, mode, |pt| f.eval(&pt.values())).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.trials, 40);
    }
}

#[test]
fn singular_points_are_resampled() {
    // 1/s₁ is singular where s₁ = 0; the sampler's grid hits that now and then
    let f = R::new(PhasePoly::constraint_sphere(2), &PhasePoly::s(2, 0)).unwrap();
    let mut s = ConstraintSampler::new(2, 0);
    let rep = check_identity(&mut s, 200, ExecMode::Sequential, |pt| f.eval(&pt.values())).unwrap();
    assert!(rep.holds());
    assert_eq!(rep.trials, 200);
}

#[test]
fn display_is_readable() {
    let f = R::new(PhasePoly::k(2, 0).pow(2), &PhasePoly::s(2, 1).pow(2)).unwrap();
    assert_eq!(f.to_string(), "(k1^2) / ((s2)^2)");
}

fn bracket(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    poisson_bracket(&r(f.clone()), &r(g.clone())).unwrap().as_poly().unwrap().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]
    #[test]
    fn bracket_laws(seed in 0u64..10_000) {
        let n = 3;
        let f = random_poly(n, seed, 3, 2);
        let g = random_poly(n, seed + 1, 3, 2);
        let h = random_poly(n, seed + 2, 3, 2);
        let c = Scalar::from_crat(CRat::gauss(2, -1));
        prop_assert!((&bracket(&f, &g) + &bracket(&g, &f)).is_zero());
        prop_assert_eq!(bracket(&f, &(&g.scale(&c) + &h)), &bracket(&f, &g).scale(&c) + &bracket(&f, &h));
        prop_assert_eq!(bracket(&f, &(&g * &h)), &(&bracket(&f, &g) * &h) + &(&g * &bracket(&f, &h)));
        let jac = &(&bracket(&f, &bracket(&g, &h)) + &bracket(&g, &bracket(&h, &f))) + &bracket(&h, &bracket(&f, &g));
        prop_assert!(jac.is_zero());
        prop_assert!(bracket(&f, &PhasePoly::one(n)).is_zero());
    }
}
