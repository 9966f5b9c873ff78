use num_traits::{One, Zero};
use numeric_core::{exact_inverse, rat, BigRational, CMatrixExact, CRat, NumericError, Scalar};
use proptest::prelude::*;

fn mat(rows: Vec<Vec<CRat>>) -> CMatrixExact {
    CMatrixExact::from_rows(rows.into_iter().map(|r| r.into_iter().map(Scalar::from_crat).collect()).collect()).unwrap()
}

#[test]
fn inverse_of_identity() {
    let id = CMatrixExact::identity(3);
    assert_eq!(exact_inverse(&id).unwrap(), id);
}

#[test]
fn inverse_of_scalar_i() {
    let i = CRat::i();
    let z = CRat::zero();
    let m = mat(vec![vec![i.clone(), z.clone()], vec![z.clone(), i.clone()]]);
    let expect = mat(vec![vec![-i.clone(), z.clone()], vec![z, -i]]);
    assert_eq!(exact_inverse(&m).unwrap(), expect);
}

#[test]
fn inverse_by_adjugate_oracle() {
    // adj([[1,1],[0,2]]) / det = [[2,-1],[0,1]] / 2
    let m = mat(vec![vec![CRat::from_int(1), CRat::from_int(1)], vec![CRat::zero(), CRat::from_int(2)]]);
    let expect = mat(vec![
        vec![CRat::from_int(1), CRat::from_ratio(-1, 2)],
        vec![CRat::zero(), CRat::from_ratio(1, 2)],
    ]);
    assert_eq!(exact_inverse(&m).unwrap(), expect);
}

#[test]
fn singular_is_reported() {
    let m = mat(vec![vec![CRat::from_int(1), CRat::i()], vec![CRat::i(), CRat::from_int(-1)]]);
    assert_eq!(exact_inverse(&m), Err(NumericError::SingularMatrix));
}

#[test]
fn inverse_with_radicals() {
    let r2 = Scalar::sqrt_rational(&rat(2, 1)).unwrap();
    let r5 = Scalar::sqrt_rational(&rat(5, 9)).unwrap();
    let m = CMatrixExact::from_rows(vec![
        vec![r2.clone(), Scalar::i()],
        vec![r5.clone(), &r2 + &r5],
    ])
    .unwrap();
    let inv = exact_inverse(&m).unwrap();
    assert_eq!(&m * &inv, CMatrixExact::identity(2));
}

fn big_rational() -> impl Strategy<Value = BigRational> {
    (-1_000_000i64..=1_000_000, 1i64..=1_000_000).prop_map(|(n, d)| rat(n, d))
}

fn crat() -> impl Strategy<Value = CRat> {
    (big_rational(), big_rational()).prop_map(|(a, b)| CRat::new(a, b))
}

fn small_crat() -> impl Strategy<Value = CRat> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9).prop_map(|(a, b, c, d)| CRat::new(rat(a, b), rat(c, d)))
}

proptest! {
    #[test]
    fn addition_associative(a in crat(), b in crat(), c in crat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplicative_inverse(a in crat()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inv().unwrap(), CRat::one());
    }

    #[test]
    fn multiplication_distributes(a in crat(), b in crat(), c in crat()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn scalar_inverse_with_two_radicals(a in small_crat(), b in small_crat(), c in small_crat()) {
        let r2 = Scalar::sqrt_rational(&rat(2, 1)).unwrap();
        let r3 = Scalar::sqrt_rational(&rat(3, 1)).unwrap();
        let x = &(&Scalar::from_crat(a) + &(&r2 * &Scalar::from_crat(b))) + &(&r3 * &Scalar::from_crat(c));
        prop_assume!(!x.is_zero());
        prop_assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn random_3x3_inverse(entries in proptest::collection::vec(small_crat(), 9)) {
        let m = CMatrixExact::new(3, 3, entries.into_iter().map(Scalar::from_crat).collect()).unwrap();
        prop_assume!(!m.determinant().unwrap().is_zero());
        let inv = exact_inverse(&m).unwrap();
        prop_assert_eq!(&inv * &m, CMatrixExact::identity(3));
    }
}
