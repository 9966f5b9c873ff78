use numeric_core::{par, ExecMode};
use phase_space::{ConstraintPoint, ConstraintSampler, PhaseError, RETRY_BUDGET};

pub const DEFAULT_SEED: u64 = 20_240_531;

/// `count` points where `f` is regular, with its values. Singular points are
/// replaced from the same sampler, at most [`RETRY_BUDGET`] times overall.
pub fn regular_points<T, F>(
    sampler: &mut ConstraintSampler,
    count: usize,
    mode: ExecMode,
    f: F,
) -> Result<Vec<(ConstraintPoint, T)>, PhaseError>
where
    T: Send,
    F: Fn(&ConstraintPoint) -> Result<T, PhaseError> + Sync + Send,
{
    let mut out = Vec::with_capacity(count);
    let mut resampled = 0;
    while out.len() < count {
        let batch: Vec<ConstraintPoint> = (out.len()..count).map(|_| sampler.next_point()).collect();
        let results = par::map(mode, &batch, &f);
        for (pt, r) in batch.into_iter().zip(results) {
            match r {
                Ok(v) => out.push((pt, v)),
                Err(PhaseError::Singular) => resampled += 1,
                Err(e) => return Err(e),
            }
        }
        if resampled > RETRY_BUDGET {
            return Err(PhaseError::SamplingExhausted { attempts: resampled });
        }
    }
    Ok(out)
}
