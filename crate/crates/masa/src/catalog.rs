use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use numeric_core::{rat, BigRational, Scalar};

use crate::spec::{classify_pt, masa_from_coeffs, sparse_row, MasaSpec, SignedPermutation};
use crate::MasaError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogName {
    Su2ab,
    Lambda,
    CartanOd,
    Nilpotent,
    DegeneratePlus,
    DegenerateMinus,
}

impl CatalogName {
    pub const ALL: [CatalogName; 6] = [
        CatalogName::Su2ab,
        CatalogName::Lambda,
        CatalogName::CartanOd,
        CatalogName::Nilpotent,
        CatalogName::DegeneratePlus,
        CatalogName::DegenerateMinus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CatalogName::Su2ab => "su2ab",
            CatalogName::Lambda => "lambda",
            CatalogName::CartanOd => "cartan_od",
            CatalogName::Nilpotent => "nilpotent",
            CatalogName::DegeneratePlus => "degenerate_plus",
            CatalogName::DegenerateMinus => "degenerate_minus",
        }
    }

    pub fn rank(self) -> usize {
        if self == CatalogName::Su2ab {
            2
        } else {
            3
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogName {
    type Err = MasaError;
    fn from_str(s: &str) -> Result<Self, MasaError> {
        CatalogName::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| MasaError::UnknownName(s.to_string()))
    }
}

/// Family parameters. `a` defaults to 1 and `b` to 0; `lambda2` is λ².
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MasaParams {
    pub a: Option<Scalar>,
    pub b: Option<Scalar>,
    pub lambda2: Option<BigRational>,
}

impl MasaParams {
    fn a(&self) -> Scalar {
        self.a.clone().unwrap_or_else(Scalar::one)
    }

    fn b(&self) -> Scalar {
        self.b.clone().unwrap_or_else(Scalar::zero)
    }
}

fn s(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

/// Coefficient rows of the λ family for `0 ≤ λ² < 1/2`.
pub fn lambda_model_rows(lambda2: &BigRational) -> Result<Vec<Vec<Scalar>>, MasaError> {
    if lambda2.is_negative() || *lambda2 >= rat(1, 2) {
        return Err(MasaError::ParamOutOfRange(format!("lambda^2 = {lambda2} must lie in [0, 1/2)")));
    }
    let l2 = Scalar::from_rational(lambda2.clone());
    let lam = Scalar::sqrt_rational(lambda2)?;
    let d = Scalar::from_rational(BigRational::one() - lambda2 * rat(2, 1));
    let r = Scalar::sqrt_rational(&(BigRational::one() - lambda2 * rat(2, 1)))?;
    let half = s(1, 2);
    let lm = &(&Scalar::one() - &r) * &half;
    let lp = &(&Scalar::one() + &r) * &half;
    let one_l2 = &Scalar::one() + &l2;
    let gm = &(&one_l2 - &(&r * &s(3, 1))) * &half;
    let gp = &(&one_l2 + &(&r * &s(3, 1))) * &half;
    let pref = (&r * &s(3, 1)).inv()?;
    let il3 = &(&Scalar::i() * &lam) * &s(3, 1);
    let x4 = -&(&l2 * &s(3, 2));
    let rows = vec![
        vec![(0, d.clone()), (1, gm), (2, one_l2.clone()), (4, x4.clone()), (6, &il3 * &lm), (8, -&(&il3 * &lp))],
        vec![(0, d.clone()), (1, gp), (2, one_l2.clone()), (4, x4), (6, &il3 * &lp), (8, -&(&il3 * &lm))],
        vec![
            (0, -&d),
            (1, one_l2.clone()),
            (2, &one_l2 * &s(2, 1)),
            (4, -&(&l2 * &s(3, 1))),
            (6, il3.clone()),
            (8, -&il3),
        ],
    ];
    rows.into_iter()
        .map(|terms| {
            let scaled: Vec<(usize, Scalar)> = terms.into_iter().map(|(k, c)| (k, &c * &pref)).collect();
            sparse_row(3, &scaled)
        })
        .collect()
}

fn degenerate_rows(sign: i64) -> Result<Vec<Vec<Scalar>>, MasaError> {
    let lam = &Scalar::sqrt_rational(&rat(1, 2))? * &Scalar::from_int(sign);
    let il = &Scalar::i() * &lam;
    let il3 = &il * &s(3, 1);
    Ok(vec![
        sparse_row(3, &[(0, s(1, 1))])?,
        sparse_row(3, &[(1, s(1, 1)), (6, il.clone()), (8, il)])?,
        sparse_row(3, &[(1, s(3, 2)), (2, s(3, 1)), (4, s(-3, 2)), (6, il3.clone()), (8, -&il3)])?,
    ])
}

fn rows_for(name: CatalogName, params: &MasaParams) -> Result<Vec<Vec<Scalar>>, MasaError> {
    let (a, b) = (params.a(), params.b());
    match name {
        CatalogName::Su2ab => Ok(vec![
            sparse_row(2, &[(0, s(1, 1))])?,
            sparse_row(2, &[(3, a), (1, -&(&Scalar::i() * &b))])?,
        ]),
        CatalogName::Lambda => {
            let l2 = params.lambda2.as_ref().ok_or(MasaError::MissingParam("lambda2"))?;
            if l2.is_zero() {
                return Err(MasaError::ParamOutOfRange("lambda^2 must be positive".into()));
            }
            lambda_model_rows(l2)
        }
        CatalogName::CartanOd => Ok(vec![
            sparse_row(3, &[(0, s(1, 3)), (1, s(2, 3)), (2, s(1, 3))])?,
            sparse_row(3, &[(2, a), (8, &(&Scalar::i() * &b) * &s(2, 1))])?,
            sparse_row(3, &[(0, s(2, 3)), (1, s(-2, 3)), (2, s(-1, 3))])?,
        ]),
        CatalogName::Nilpotent => Ok(vec![
            sparse_row(3, &[(0, s(1, 1))])?,
            sparse_row(3, &[(2, s(1, 1)), (8, Scalar::i())])?,
            sparse_row(3, &[(4, s(1, 1)), (6, Scalar::i())])?,
        ]),
        CatalogName::DegeneratePlus => degenerate_rows(1),
        CatalogName::DegenerateMinus => degenerate_rows(-1),
    }
}

/// A named family. The parity diag(1, −1) (u(2)) or diag(1, 1, −1) (u(3)) is
/// attached whenever it is compatible with the chosen parameters.
pub fn catalog_masa(name: &str, params: &MasaParams) -> Result<MasaSpec, MasaError> {
    let name: CatalogName = name.parse()?;
    let spec = masa_from_coeffs(name.rank(), rows_for(name, params)?)?.with_name(name.as_str());
    let parity = if name.rank() == 2 {
        SignedPermutation::diagonal(&[1, -1])?
    } else {
        SignedPermutation::diagonal(&[1, 1, -1])?
    };
    if classify_pt(&spec, &parity).is_ok() {
        spec.with_parity(parity)
    } else {
        Ok(spec)
    }
}
