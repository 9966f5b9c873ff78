use num_traits::Zero;

use lie_algebra::{casimir_element, EnvElement};
use masa::{catalog_masa, CatalogName, MasaParams, SignedPermutation};
use numeric_core::{rat, BigRational, CRat, ExecMode, Scalar};
use phase_space::{
    check_identity, dirac_bracket_jet, trial_count, ConstraintPoint, ConstraintSampler, PhaseError, PhasePoly,
    PhaseRational,
};

use crate::integrals::integrals_catalog;
use crate::points::regular_points;
use crate::racah::solve_exact;
use crate::system::{build_potential, Reducer};
use crate::ReductionError;

pub(crate) fn describe(pt: &ConstraintPoint) -> String {
    let list = |v: &[BigRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    format!("s=({}) p=({}) k=({})", list(pt.s()), list(pt.p()), list(pt.k()))
}

/// `Ẑ_ρ − k_ρ` is identically zero, per generator of the MASA.
pub fn verify_zhat(r: &Reducer) -> Vec<bool> {
    let n = r.n();
    r.masa()
        .matrices()
        .iter()
        .enumerate()
        .map(|(rho, z)| (&r.momentum_map(z) - &PhaseRational::from_poly(PhasePoly::k(n, rho))).normalize().is_zero())
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomomorphismReport {
    pub pairs: usize,
    pub points: usize,
    /// Generator pairs `(i, j)` whose bracket failed at some point.
    pub failures: Vec<(usize, usize)>,
}

impl HomomorphismReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `{X̂_i, X̂_j} = widehat([X_i, X_j])` for every pair of basis generators.
///
/// The bracket is the one of the unreduced space at `x = 0`: the Dirac
/// bracket in `(s, p)` plus the `(x, k)` part, where `∂X̂/∂x_μ = widehat([Z_μ, X])`.
pub fn verify_homomorphism(r: &Reducer, points: usize, seed: u64, mode: ExecMode) -> Result<HomomorphismReport, ReductionError> {
    let n = r.n();
    let basis = r.basis();
    let dim = basis.generators().len();
    let zc: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|mu| {
            let terms = r.masa().generator_terms(mu);
            (0..dim)
                .map(|i| {
                    let mut c = vec![Scalar::zero(); dim];
                    for (l, a) in &terms {
                        for (m, b) in basis.bracket(*l, i) {
                            c[*m] = &c[*m] + &(a * b);
                        }
                    }
                    c
                })
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
    let value = |coeffs: &[Scalar], vals: &[Scalar]| {
        coeffs.iter().zip(vals).filter(|(c, _)| !c.is_zero()).fold(Scalar::zero(), |acc, (c, v)| &acc + &(c * v))
    };
    let mut sampler = ConstraintSampler::new(n, seed);
    let results = regular_points(&mut sampler, points, mode, |pt| {
        let x = pt.values();
        let jets = r.hat_jets(&x, 1)?;
        let vals: Vec<Scalar> = jets.iter().map(|j| j.value().clone()).collect();
        let zhat: Vec<Vec<Scalar>> = zc.iter().map(|per| per.iter().map(|c| value(c, &vals)).collect()).collect();
        let mut bad = Vec::new();
        for &(i, j) in &pairs {
            let mut lhs = dirac_bracket_jet(&jets[i], &jets[j], n, &x)?.value().clone();
            for (mu, zh) in zhat.iter().enumerate() {
                let kk = 2 * n + mu;
                lhs = &lhs - &(&(&zh[i] * jets[j].grad(kk)) - &(jets[i].grad(kk) * &zh[j]));
            }
            let mut ij = vec![Scalar::zero(); dim];
            for (m, c) in basis.bracket(i, j) {
                ij[*m] = c.clone();
            }
            if lhs != value(&ij, &vals) {
                bad.push((i, j));
            }
        }
        Ok(bad)
    })?;
    let mut failures: Vec<(usize, usize)> = results.into_iter().flat_map(|(_, b)| b).collect();
    failures.sort_unstable();
    failures.dedup();
    Ok(HomomorphismReport { pairs: pairs.len(), points, failures })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConservationReport {
    pub trials: usize,
    pub resampled: usize,
    /// A point where `{Ĥ, T̂}_D ≠ 0`, with the bracket value.
    pub witness: Option<(String, Scalar)>,
}

impl ConservationReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// `{h, t}_D = 0` on the constraint surface, at `max(20, deg + 1)` points.
pub fn check_conservation(h: &PhaseRational, t: &PhaseRational, seed: u64, mode: ExecMode) -> Result<ConservationReport, ReductionError> {
    let n = h.n();
    let trials = trial_count(h.degree_bound() + t.degree_bound());
    let mut sampler = ConstraintSampler::new(n, seed);
    let rep = check_identity(&mut sampler, trials, mode, |pt| {
        let x = pt.values();
        Ok(dirac_bracket_jet(&h.jet(&x, 1)?, &t.jet(&x, 1)?, n, &x)?.value().clone())
    })?;
    Ok(ConservationReport {
        trials: rep.trials,
        resampled: rep.resampled,
        witness: rep.witness.map(|(pt, v)| (describe(&pt), v)),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub relation: String,
    pub trials: usize,
    pub resampled: usize,
}

/// `lhs = rhs` on the constraint surface; a failure carries the point and residual.
pub fn verify_relation(
    relation: &str,
    lhs: &PhaseRational,
    rhs: &PhaseRational,
    seed: u64,
    mode: ExecMode,
) -> Result<RelationReport, ReductionError> {
    let diff = lhs - rhs;
    let trials = trial_count(diff.degree_bound());
    let mut sampler = ConstraintSampler::new(diff.n(), seed);
    let rep = check_identity(&mut sampler, trials, mode, |pt| diff.eval(&pt.values()))?;
    match rep.witness {
        None => Ok(RelationReport { relation: relation.into(), trials: rep.trials, resampled: rep.resampled }),
        Some((pt, v)) => Err(ReductionError::RelationFailed {
            relation: relation.into(),
            point: describe(&pt),
            residual: v.to_string(),
        }),
    }
}

fn k(n: usize, i: usize) -> PhaseRational {
    PhasePoly::k(n, i).into()
}

/// Both sides of the over-completeness relation of a catalog model, with its text.
pub fn sum_relation(name: &str, params: &MasaParams) -> Result<(String, PhaseRational, PhaseRational), ReductionError> {
    let cat: CatalogName = name.parse()?;
    if !matches!(cat, CatalogName::Lambda | CatalogName::CartanOd | CatalogName::Nilpotent) {
        return Err(ReductionError::NoAlgebra(name.into()));
    }
    let masa = catalog_masa(name, params)?;
    let n = masa.n();
    let h = &PhaseRational::from_poly(PhasePoly::p_dot_p(n)) + &build_potential(&masa)?;
    let ints = integrals_catalog(name, params)?;
    let t = |i: usize| &ints[i].reduced;
    let (k1, k2, k3) = (k(n, 0), k(n, 1), k(n, 2));
    Ok(match cat {
        CatalogName::Lambda => {
            let l2 = params.lambda2.clone().unwrap_or_default();
            let d = Scalar::from_rational(rat(1, 1) - l2 * rat(2, 1));
            let lhs = &(t(0) + t(1)) + t(2);
            let rhs = &h.scale(&d) - &(&(&k1 - &k2) - &k3).pow(2);
            ("T1 + T2 + T3 = (1 - 2 lambda^2) H - (k1 - k2 - k3)^2".to_string(), lhs, rhs)
        }
        CatalogName::CartanOd => {
            let rhs = &(&h + &(&k1 * &k3).scale(&Scalar::from_int(2))) - &k1.pow(2);
            ("T1 + T2 = H + 2 k1 k3 - k1^2".to_string(), t(0) + t(1), rhs)
        }
        _ => {
            let extra = (&k1.pow(2) + &k2.pow(2).scale(&Scalar::from_int(2))).scale(&Scalar::from_ratio(1, 3));
            ("T1 + T2 = H + (k1^2 + 2 k2^2)/3".to_string(), t(0) + t(1), &h + &extra)
        }
    })
}

/// The displayed over-completeness relation of `lambda`, `cartan_od` or `nilpotent`.
pub fn verify_sum_relation(name: &str, params: &MasaParams, seed: u64, mode: ExecMode) -> Result<RelationReport, ReductionError> {
    let (text, lhs, rhs) = sum_relation(name, params)?;
    verify_relation(&text, &lhs, &rhs, seed, mode)
}

/// `proj(𝒞₂) = multiplier·Ĥ + additive` at fixed couplings.
#[derive(Clone, Debug, PartialEq)]
pub struct CasimirReport {
    pub k: Vec<BigRational>,
    pub multiplier: Scalar,
    pub additive: Scalar,
    pub points: usize,
    /// The printed `(multiplier, additive)`, where the model states one.
    pub printed: Option<(Scalar, Scalar)>,
}

impl CasimirReport {
    pub fn matches_printed(&self) -> Option<bool> {
        self.printed.as_ref().map(|(m, a)| *m == self.multiplier && *a == self.additive)
    }
}

/// Fits the projection of the quadratic Casimir exactly as `c·Ĥ + d` at
/// fixed `k`, over enough points to overdetermine the fit.
pub fn verify_casimir_projection(
    name: &str,
    params: &MasaParams,
    k: &[BigRational],
    seed: u64,
    mode: ExecMode,
) -> Result<CasimirReport, ReductionError> {
    let cat: CatalogName = name.parse()?;
    let masa = catalog_masa(name, params)?;
    let n = masa.n();
    if k.len() != n {
        return Err(PhaseError::DimensionMismatch { expected: n, found: k.len() }.into());
    }
    let r = Reducer::new(&masa)?;
    let casimir: EnvElement = casimir_element(2, r.basis())?;
    let proj = r.project(&casimir);
    let h = &PhaseRational::from_poly(PhasePoly::p_dot_p(n)) + &r.potential();
    let points = trial_count(proj.degree_bound());
    let mut sampler = ConstraintSampler::new(n, seed).with_fixed_k(k.to_vec());
    let vals = regular_points(&mut sampler, points, mode, |pt| {
        let x = pt.values();
        Ok((h.eval(&x)?, proj.eval(&x)?))
    })?;
    let rows: Vec<Vec<Scalar>> = vals.iter().map(|(_, (hv, _))| vec![hv.clone(), Scalar::from_int(1)]).collect();
    let rhs: Vec<Scalar> = vals.iter().map(|(_, (_, pv))| pv.clone()).collect();
    let sol = solve_exact(&rows, &rhs)?;
    let printed = (cat == CatalogName::Su2ab).then(|| (Scalar::from_int(2), Scalar::zero()));
    Ok(CasimirReport { k: k.to_vec(), multiplier: sol[0].clone(), additive: sol[1].clone(), points, printed })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PtReport {
    pub trials: usize,
    pub witness: Option<(String, Scalar)>,
}

impl PtReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn permute(parity: &SignedPermutation, v: &[BigRational]) -> Vec<CRat> {
    parity
        .entries()
        .iter()
        .map(|&(col, sign)| {
            let x = &v[col];
            CRat::real(if sign < 0 { -x.clone() } else { x.clone() })
        })
        .collect()
}

/// `f(s, p) = conj f(𝒫s, 𝒫p)` on the constraint surface.
pub fn verify_pt_invariance(
    f: &PhaseRational,
    parity: &SignedPermutation,
    seed: u64,
    mode: ExecMode,
) -> Result<PtReport, ReductionError> {
    let n = f.n();
    if parity.n() != n {
        return Err(PhaseError::DimensionMismatch { expected: n, found: parity.n() }.into());
    }
    let trials = trial_count(f.degree_bound());
    let mut sampler = ConstraintSampler::new(n, seed);
    let rep = check_identity(&mut sampler, trials, mode, |pt| {
        let mut y = permute(parity, pt.s());
        y.extend(permute(parity, pt.p()));
        y.extend(pt.k().iter().cloned().map(CRat::real));
        Ok(&f.eval(&pt.values())? - &f.eval(&y)?.conj())
    })?;
    Ok(PtReport { trials: rep.trials, witness: rep.witness.map(|(pt, v)| (describe(&pt), v)) })
}
