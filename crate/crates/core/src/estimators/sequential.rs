use super::bernoulli::check_unit_support;
use super::{seq_bern_est, subgauss_est, ConstantProfile, EstimateReport, StageRecorder};
use crate::dist::RandomSource;
use crate::error::{invalid, Result};
use crate::kernels::{ExperimentCounter, QVar};
use crate::stats::lower_median;

/// Failure probability of the sub-Gaussian call inside each repetition.
pub const INNER_DELTA: f64 = 1.0 / 16.0;

/// Relative-error estimation for `X` in `[0, 1]` without prior knowledge of
/// `σ/μ`: `|μ̃ - μ| ≤ εμ` with probability `1 - δ`, at an expected cost of
/// order `(σ/(εμ) + 1/√(εμ)) log(1/δ)` up to logarithmic factors.
///
/// Each of `⌈32 log(1/δ)⌉` repetitions takes a rough sequential estimate of
/// `μ`, a budget-capped rough estimate of `σ²` (as the mean of
/// `(X - X')²/2`), and then runs [`subgauss_est`] sized by both. The result
/// is the lower median. A repetition whose rough mean comes back 0 outputs 0.
///
/// A zero mean needs a budgeted counter.
pub fn seq_relative_est(
    x: &QVar,
    eps: f64,
    delta: f64,
    profile: &ConstantProfile,
    rng: &mut RandomSource,
    counter: &mut ExperimentCounter,
) -> Result<EstimateReport> {
    check_unit_support(x)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid(format!("relative error {eps} outside (0, 1)")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("failure probability {delta} outside (0, 1)")));
    }
    if x.dist.mean() == 0.0 && counter.budget().is_none() {
        return Err(invalid("sequential estimation of a zero mean needs a budget"));
    }
    let reps = (32.0 * profile.log_inv(delta)).ceil() as usize;
    let y = x.derive(x.dist.pair_square_diff());
    let mut stages = StageRecorder::new(counter);
    let mut outputs = Vec::with_capacity(reps);
    for _ in 0..reps {
        let mu_x = seq_bern_est(x, rng, counter)?;
        stages.nest("mean", &mu_x, counter);
        let mu_x = mu_x.estimate;
        if mu_x == 0.0 {
            outputs.push(0.0);
            continue;
        }

        let scale = (eps * mu_x).sqrt();
        let mut local = counter.child(Some((profile.c1_alg3 / scale).ceil() as u64));
        let mu_y = seq_bern_est(&y, rng, &mut local)?;
        counter.absorb(&local);
        stages.nest("variance", &mu_y, counter);
        let mu_y = if local.interrupted() { 0.0 } else { mu_y.estimate };

        let n = profile.c2_alg3 * (mu_y.sqrt() / (eps * mu_x)).max(1.0 / scale);
        let r = subgauss_est(x, n, INNER_DELTA, profile, rng, counter)?;
        stages.nest("subgauss", &r, counter);
        outputs.push(r.estimate);
    }
    Ok(stages.finish(lower_median(&outputs), counter))
}
