use num_traits::Zero;

use masa::MasaParams;
use numeric_core::{BigRational, CMatrixExact, CMatrixFloat, CRat, ExecMode, Scalar};
use phase_space::{dirac_bracket_jet, trial_count, ConstraintSampler, PhaseError};

use crate::integrals::integrals_catalog;
use crate::points::regular_points;
use crate::ReductionError;

fn rref_solve(rows: &[Vec<Scalar>], rhs: &[Scalar], m: usize) -> Result<Result<Vec<Scalar>, usize>, ReductionError> {
    let data: Vec<Scalar> = rows.iter().zip(rhs).flat_map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone()))).collect();
    let (red, pivots) = CMatrixExact::new(rows.len(), m + 1, data)?.rref();
    if pivots.contains(&m) {
        return Err(ReductionError::FitInconsistent);
    }
    if pivots.len() < m {
        return Ok(Err(pivots.len()));
    }
    Ok(Ok((0..m).map(|j| red.get(j, m).clone()).collect()))
}

/// Continued-fraction approximant of `x` with denominator at most `MAX_DEN`.
fn rationalize(x: f64) -> Option<BigRational> {
    const MAX_DEN: i64 = 1 << 20;
    let tol = 1e-7 * x.abs().max(1.0);
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i64;
        let (h2, k2) = (a.checked_mul(h1)?.checked_add(h0)?, a.checked_mul(k1)?.checked_add(k0)?);
        if k2 > MAX_DEN {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return Some(BigRational::new(h1.into(), k1.into()));
        }
        let frac = y - a as f64;
        if frac.abs() < 1e-15 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

/// Floating-point solve of the leading square block, rounded to Gaussian
/// rationals; `None` when the block is singular or a coefficient has no small
/// approximant.
fn float_candidate(rows: &[Vec<Scalar>], rhs: &[Scalar], m: usize) -> Option<Vec<Scalar>> {
    let scale: Vec<f64> = (0..m)
        .map(|j| rows[..m].iter().map(|r| r[j].to_complex64().norm()).fold(0.0, f64::max))
        .collect();
    if scale.iter().any(|&s| s == 0.0 || !s.is_finite()) {
        return None;
    }
    let a = CMatrixFloat::from_fn(m, m, |i, j| rows[i][j].to_complex64() / scale[j]).ok()?;
    let b = CMatrixFloat::from_fn(m, 1, |i, _| rhs[i].to_complex64()).ok()?;
    let x = a.solve(&b).ok()?;
    (0..m)
        .map(|j| {
            let v = x[(j, 0)] / scale[j];
            Some(Scalar::from_crat(CRat::new(rationalize(v.re)?, rationalize(v.im)?)))
        })
        .collect()
}

fn satisfies(rows: &[Vec<Scalar>], rhs: &[Scalar], sol: &[Scalar]) -> bool {
    rows.iter().zip(rhs).all(|(r, b)| r.iter().zip(sol).fold(Scalar::zero(), |acc, (a, c)| &acc + &(a * c)) == *b)
}

/// Exact solution of the (possibly overdetermined) system `rows·c = rhs`.
///
/// A rounded floating-point guess is accepted only after exact substitution
/// into every row; otherwise the leading square block, and failing that the
/// full system, is eliminated exactly.
pub(crate) fn solve_exact(rows: &[Vec<Scalar>], rhs: &[Scalar]) -> Result<Vec<Scalar>, ReductionError> {
    let m = rows.first().map_or(0, Vec::len);
    if rows.len() >= m {
        if let Some(sol) = float_candidate(rows, rhs, m).filter(|s| satisfies(rows, rhs, s)) {
            return Ok(sol);
        }
    }
    let sol = if rows.len() >= m { rref_solve(&rows[..m], &rhs[..m], m)?.ok() } else { None };
    let sol = match sol {
        Some(s) => s,
        None => rref_solve(rows, rhs, m)?.map_err(|rank| ReductionError::FitUnderdetermined { unknowns: m, rank })?,
    };
    if satisfies(rows, rhs, &sol) {
        Ok(sol)
    } else {
        Err(ReductionError::FitInconsistent)
    }
}

/// Exact coefficients of `target` over a monomial basis in `T̂₁, T̂₂, T̂₃`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fit {
    pub target: String,
    pub monomials: Vec<String>,
    pub coeffs: Vec<Scalar>,
    pub points: usize,
}

impl Fit {
    /// `(monomial, coefficient)` pairs with a nonzero coefficient.
    pub fn support(&self) -> Vec<(&str, &Scalar)> {
        self.monomials.iter().zip(&self.coeffs).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.as_str(), c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RacahReport {
    pub model: String,
    pub k: Vec<BigRational>,
    pub points: usize,
    /// `T̂₁₂ + T̂₁₃ = 0` at every point.
    pub t12_plus_t13: bool,
    /// `T̂₁₂ − T̂₂₃ = 0` at every point.
    pub t12_minus_t23: bool,
    /// `T̂₁₂` vanishes identically (the integrals commute).
    pub t12_zero: bool,
    pub fits: Vec<Fit>,
}

impl RacahReport {
    pub fn dependency_holds(&self) -> bool {
        self.t12_plus_t13 && self.t12_minus_t23
    }
}

fn exponents(max_deg: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for d in (0..=max_deg).rev() {
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push([a, b, d - a - b]);
            }
        }
    }
    out
}

fn monomial_name(e: &[u32; 3]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(i, &p)| if p == 1 { format!("T{}", i + 1) } else { format!("T{}^{p}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn monomial_value(e: &[u32; 3], t: &[Scalar; 3]) -> Scalar {
    t.iter().zip(e).fold(Scalar::from_int(1), |acc, (v, &p)| &acc * &v.pow(p))
}

struct Sample {
    t: [Scalar; 3],
    t12: Scalar,
    plus: bool,
    minus: bool,
    b1: Scalar,
    b2: Scalar,
}

/// Classical `T̂_{ij} = {T̂_i, T̂_j}_D` of a three-integral model at fixed `k`:
/// the dependency `T̂₁₂ = −T̂₁₃ = T̂₂₃`, and exact fits of `{T̂₁₂, T̂₁}`,
/// `{T̂₁₂, T̂₂}` over quadratics in the `T̂_i` and of `T̂₁₂²` over cubics.
pub fn racah_structure_report(
    name: &str,
    params: &MasaParams,
    k: &[BigRational],
    seed: u64,
    mode: ExecMode,
) -> Result<RacahReport, ReductionError> {
    let ints = integrals_catalog(name, params)?;
    if ints.len() < 3 {
        return Err(ReductionError::NoAlgebra(name.into()));
    }
    let n = ints[0].reduced.n();
    if k.len() != n {
        return Err(PhaseError::DimensionMismatch { expected: n, found: k.len() }.into());
    }
    let ts: Vec<_> = ints.iter().take(3).map(|i| i.reduced.clone()).collect();
    let bound: usize = ts.iter().map(|t| t.degree_bound()).sum();
    let points = trial_count(2 * bound) + 20;
    let mut sampler = ConstraintSampler::new(n, seed).with_fixed_k(k.to_vec());
    let samples = regular_points(&mut sampler, points, mode, |pt| {
        let x = pt.values();
        let j: Vec<_> = ts.iter().map(|t| t.jet(&x, 2)).collect::<Result<_, _>>()?;
        let t12 = dirac_bracket_jet(&j[0], &j[1], n, &x)?;
        let t13 = dirac_bracket_jet(&j[0], &j[2], n, &x)?;
        let t23 = dirac_bracket_jet(&j[1], &j[2], n, &x)?;
        let b1 = dirac_bracket_jet(&t12, &j[0].truncate(1), n, &x)?.value().clone();
        let b2 = dirac_bracket_jet(&t12, &j[1].truncate(1), n, &x)?.value().clone();
        let v12 = t12.value().clone();
        Ok(Sample {
            t: [j[0].value().clone(), j[1].value().clone(), j[2].value().clone()],
            plus: (&v12 + t13.value()).is_zero(),
            minus: (&v12 - t23.value()).is_zero(),
            t12: v12,
            b1,
            b2,
        })
    })?;
    let samples: Vec<Sample> = samples.into_iter().map(|(_, s)| s).collect();

    let fit = |target: &str, deg: u32, f: &dyn Fn(&Sample) -> Scalar| -> Result<Fit, ReductionError> {
        let ex = exponents(deg);
        let rows: Vec<Vec<Scalar>> = samples.iter().map(|s| ex.iter().map(|e| monomial_value(e, &s.t)).collect()).collect();
        let rhs: Vec<Scalar> = samples.iter().map(f).collect();
        Ok(Fit {
            target: target.into(),
            monomials: ex.iter().map(monomial_name).collect(),
            coeffs: solve_exact(&rows, &rhs)?,
            points: samples.len(),
        })
    };
    let fits = vec![
        fit("{T12, T1}", 2, &|s| s.b1.clone())?,
        fit("{T12, T2}", 2, &|s| s.b2.clone())?,
        fit("T12^2", 3, &|s| s.t12.pow(2))?,
    ];
    Ok(RacahReport {
        model: name.into(),
        k: k.to_vec(),
        points: samples.len(),
        t12_plus_t13: samples.iter().all(|s| s.plus),
        t12_minus_t23: samples.iter().all(|s| s.minus),
        t12_zero: samples.iter().all(|s| s.t12.is_zero()),
        fits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use numeric_core::rat;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn rationalize_small_fractions() {
        assert_eq!(rationalize(-176.0 / 75.0), Some(rat(-176, 75)));
        assert_eq!(rationalize(0.0), Some(rat(0, 1)));
        assert_eq!(rationalize(1e13), None);
        assert_eq!(rationalize(f64::NAN), None);
    }

    #[test]
    fn radical_solution_uses_exact_elimination() {
        let r2 = Scalar::sqrt_rational(&rat(2, 1)).unwrap();
        let rows: Vec<Vec<Scalar>> = (1..6).map(|i| vec![s(i), s(i * i)]).collect();
        let rhs: Vec<Scalar> = rows.iter().map(|r| &(&r[0] * &r2) + &r[1]).collect();
        assert_eq!(solve_exact(&rows, &rhs).unwrap(), vec![r2, s(1)]);
    }

    #[test]
    fn inconsistent_and_underdetermined_fits() {
        let rows = vec![vec![s(1), s(1)], vec![s(2), s(2)], vec![s(3), s(3)]];
        assert!(matches!(
            solve_exact(&rows, &[s(1), s(2), s(3)]),
            Err(ReductionError::FitUnderdetermined { unknowns: 2, rank: 1 })
        ));
        let rows = vec![vec![s(1)], vec![s(2)]];
        assert_eq!(solve_exact(&rows, &[s(1), s(3)]), Err(ReductionError::FitInconsistent));
    }
}
