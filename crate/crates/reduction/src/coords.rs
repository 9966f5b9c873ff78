use num_traits::{One, Signed};

use numeric_core::{rat, rat_to_f64, BigRational, Complex64, Scalar};
use phase_space::ConstraintSampler;

use crate::ReductionError;

type C = Complex64;

/// Exact constants of the λ family: `λ`, `d = 1 − 2λ²`, `r = √d`, `λ± = (1 ± r)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaConstants {
    pub lambda2: BigRational,
    pub lam: Scalar,
    pub d: Scalar,
    pub r: Scalar,
    pub lm: Scalar,
    pub lp: Scalar,
}

impl LambdaConstants {
    /// Requires `0 ≤ λ² < 1/2`.
    pub fn new(lambda2: &BigRational) -> Result<Self, ReductionError> {
        if lambda2.is_negative() || *lambda2 >= rat(1, 2) {
            return Err(ReductionError::ParamOutOfRange(format!("lambda^2 = {lambda2} must lie in [0, 1/2)")));
        }
        let dq = BigRational::one() - lambda2 * rat(2, 1);
        let r = Scalar::sqrt_rational(&dq)?;
        let half = Scalar::from_ratio(1, 2);
        Ok(LambdaConstants {
            lambda2: lambda2.clone(),
            lam: Scalar::sqrt_rational(lambda2)?,
            d: Scalar::from_rational(dq),
            lm: &(&Scalar::one() - &r) * &half,
            lp: &(&Scalar::one() + &r) * &half,
            r,
        })
    }
}

struct FloatLambda {
    lam: f64,
    r: f64,
    lm: f64,
    lp: f64,
}

fn float_lambda(lambda2: f64) -> Result<FloatLambda, ReductionError> {
    if !(0.0..0.5).contains(&lambda2) {
        return Err(ReductionError::ParamOutOfRange(format!("lambda^2 = {lambda2} must lie in [0, 1/2)")));
    }
    let r = (1.0 - 2.0 * lambda2).sqrt();
    Ok(FloatLambda { lam: lambda2.sqrt(), r, lm: 0.5 * (1.0 - r), lp: 0.5 * (1.0 + r) })
}

fn denominators(c: &FloatLambda, s: [f64; 3]) -> [C; 3] {
    let il = C::new(0.0, c.lam);
    [
        C::from(c.lm * s[0] - c.lp * s[1]) + il * s[2],
        C::from(c.lp * s[0] - c.lm * s[1]) + il * s[2],
        il * (s[0] - s[1]) - s[2],
    ]
}

/// `(cos 2ξ, cos χ)` at a point of the sphere.
pub fn coordinate_map(lambda2: f64, s: [f64; 3]) -> Result<(C, C), ReductionError> {
    let c = float_lambda(lambda2)?;
    let [d1, d2, d3] = denominators(&c, s);
    let (a, b) = (d1 * d1, d2 * d2);
    Ok(((a - b) / (a + b), d3 / c.r))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateReport {
    pub lambda2: f64,
    pub points: usize,
    /// Largest relative mismatch between `V_λ(s)` and the separated potential.
    pub max_residual: f64,
    /// Largest `|D₁² + D₂² + D₃² − (1 − 2λ²)|`.
    pub sphere_residual: f64,
}

impl CoordinateReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual < tol && self.sphere_residual < tol
    }
}

/// Compares `V_λ` against `(1/(1−2λ²))[(k₁²/cos²ξ + k₂²/sin²ξ)/sin²χ + k₃²/cos²χ]`
/// at 20 sampled points away from the singular locus.
pub fn verify_coordinate_map(lambda2: f64, k: [f64; 3], seed: u64) -> Result<CoordinateReport, ReductionError> {
    let c = float_lambda(lambda2)?;
    let d = 1.0 - 2.0 * lambda2;
    let mut sampler = ConstraintSampler::new(3, seed);
    let (mut points, mut max_residual, mut sphere_residual) = (0, 0.0f64, 0.0f64);
    let mut attempts = 0;
    while points < 20 {
        attempts += 1;
        if attempts > 20 + phase_space::RETRY_BUDGET {
            return Err(phase_space::PhaseError::SamplingExhausted { attempts }.into());
        }
        let pt = sampler.next_point();
        let s = [rat_to_f64(&pt.s()[0]), rat_to_f64(&pt.s()[1]), rat_to_f64(&pt.s()[2])];
        let den = denominators(&c, s);
        if den.iter().any(|z| z.norm() < 1e-3) {
            continue;
        }
        let v: C = den.iter().zip(k).map(|(z, kk)| C::from(kk * kk) / (z * z)).sum();
        let (cos2xi, cos_chi) = coordinate_map(lambda2, s)?;
        let cos2 = (C::from(1.0) + cos2xi) * 0.5;
        let sin2 = (C::from(1.0) - cos2xi) * 0.5;
        let cchi2 = cos_chi * cos_chi;
        let schi2 = C::from(1.0) - cchi2;
        let w = ((C::from(k[0] * k[0]) / cos2 + C::from(k[1] * k[1]) / sin2) / schi2 + C::from(k[2] * k[2]) / cchi2) / d;
        max_residual = max_residual.max((v - w).norm() / v.norm().max(1.0));
        let sum: C = den.iter().map(|z| z * z).sum();
        sphere_residual = sphere_residual.max((sum - d).norm());
        points += 1;
    }
    Ok(CoordinateReport { lambda2, points, max_residual, sphere_residual })
}
