use num_traits::Zero;
use numeric_core::{par, ExecMode, Scalar};

use crate::rational::PhaseRational;
use crate::sample::{ConstraintPoint, ConstraintSampler};
use crate::PhaseError;

/// Resample budget for points that hit a singular locus.
pub const RETRY_BUDGET: usize = 100;

/// `max(20, bound + 1)`.
pub fn trial_count(degree_bound: usize) -> usize {
    20.max(degree_bound + 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub trials: usize,
    pub resampled: usize,
    /// First point where the expression did not vanish, with its value.
    pub witness: Option<(ConstraintPoint, Scalar)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Evaluates `f` at `trials` sampled points (in parallel when `mode` allows)
/// and reports whether every value is exactly zero. Points where `f` reports
/// [`PhaseError::Singular`] are replaced by fresh samples.
pub fn check_identity<F>(sampler: &mut ConstraintSampler, trials: usize, mode: ExecMode, f: F) -> Result<IdentityReport, PhaseError>
where
    F: Fn(&ConstraintPoint) -> Result<Scalar, PhaseError> + Sync + Send,
{
    let mut done = 0;
    let mut resampled = 0;
    let mut pending: Vec<ConstraintPoint> = (0..trials).map(|_| sampler.next_point()).collect();
    while !pending.is_empty() {
        let results = par::map(mode, &pending, |pt| f(pt));
        let mut retry = 0;
        for (pt, r) in pending.iter().zip(results) {
            match r {
                Ok(v) if v.is_zero() => done += 1,
                Ok(v) => {
                    return Ok(IdentityReport { trials: done + 1, resampled, witness: Some((pt.clone(), v)) });
                }
                Err(PhaseError::Singular) => retry += 1,
                Err(e) => return Err(e),
            }
        }
        resampled += retry;
        if resampled > RETRY_BUDGET {
            return Err(PhaseError::SamplingExhausted { attempts: resampled });
        }
        pending = (0..retry).map(|_| sampler.next_point()).collect();
    }
    Ok(IdentityReport { trials: done, resampled, witness: None })
}

/// Whether `f` is exactly zero on the constraint surface, tested at
/// `trials` points (at least `max(20, deg + 1)`).
pub fn vanishes_on_constraint(f: &PhaseRational, trials: usize, seed: u64) -> Result<bool, PhaseError> {
    let trials = trials.max(trial_count(f.num().total_degree()));
    let mut sampler = ConstraintSampler::new(f.n(), seed);
    let report = check_identity(&mut sampler, trials, ExecMode::default(), |pt| f.eval(&pt.values()))?;
    Ok(report.holds())
}
