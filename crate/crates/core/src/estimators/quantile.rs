use super::{ConstantProfile, EstimateReport, StageRecorder};
use crate::dist::RandomSource;
use crate::error::{invalid, Result};
use crate::kernels::{seq_aamp, ExperimentCounter, QVar};
use crate::stats::lower_median;

/// Outcome of one conditional draw.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CondSample {
    /// `None` when the budget ran out first.
    pub value: Option<f64>,
    /// Oracle experiments charged by this draw.
    pub oracle_cost: u64,
}

/// Draws from `X` conditioned on `X > x` by amplifying the tail
/// `q = Pr[X > x]` with `V = C(U ⊗ I)`, then measuring the value register.
/// `x = -∞` conditions on nothing.
///
/// An empty tail never succeeds, so it needs a budgeted counter.
pub fn cond_sample_above(x: &QVar, threshold: f64, rng: &mut RandomSource, counter: &mut ExperimentCounter) -> Result<CondSample> {
    let before = counter.oracle_experiments();
    let (cond, tail) = x.dist.conditional_above(threshold);
    // the whole support is above: the tail is 1, not a rounded sum
    let q = if threshold < x.dist.min() { 1.0 } else { tail.min(1.0) };
    if q == 0.0 && counter.budget().is_none() {
        return Err(invalid(format!("no mass above {threshold} and no budget to stop the search")));
    }
    let out = seq_aamp(q, rng, counter, x.oracle_composite())?;
    let value = if out.succeeded && counter.charge(x.cost_measure, 0).is_ok() { cond.map(|d| d.sample(rng)) } else { None };
    Ok(CondSample { value, oracle_cost: counter.oracle_experiments() - before })
}

/// One repetition of the quantile search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantileRep {
    /// Last completed sample, or `-∞` if none completed.
    pub value: f64,
    pub oracle_cost: u64,
}

fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(invalid(format!("{name} = {v} outside (0, 1)")));
    }
    Ok(())
}

/// Quantile estimation by repeated climbing: each of `⌈6 log(1/δ)⌉`
/// repetitions starts below the support and keeps drawing above its last
/// value until a private budget of `⌈c′/√p⌉` experiments runs out; the answer
/// is the lower median of the last values. With the profile's `c`,
/// `Q(p) ≤ Q̃ ≤ Q(cp)` with probability at least `1 - δ`.
pub fn quantile_est(
    x: &QVar,
    p: f64,
    delta: f64,
    profile: &ConstantProfile,
    rng: &mut RandomSource,
    counter: &mut ExperimentCounter,
) -> Result<EstimateReport> {
    quantile_est_traced(x, p, delta, profile, rng, counter).map(|(r, _)| r)
}

/// [`quantile_est`] that also returns each repetition's result and cost.
pub fn quantile_est_traced(
    x: &QVar,
    p: f64,
    delta: f64,
    profile: &ConstantProfile,
    rng: &mut RandomSource,
    counter: &mut ExperimentCounter,
) -> Result<(EstimateReport, Vec<QuantileRep>)> {
    check_open_unit("quantile order", p)?;
    check_open_unit("failure probability", delta)?;
    let reps = (6.0 * profile.log_inv(delta)).ceil() as usize;
    let budget = (profile.c_prime / p.sqrt()).ceil() as u64;
    let mut stages = StageRecorder::new(counter);
    let mut trace = Vec::with_capacity(reps);
    for _ in 0..reps {
        let mut local = counter.child(Some(budget));
        let mut y = f64::NEG_INFINITY;
        while let Some(v) = cond_sample_above(x, y, rng, &mut local)?.value {
            y = v;
        }
        counter.absorb(&local);
        trace.push(QuantileRep { value: y, oracle_cost: local.oracle_experiments() });
    }
    stages.mark("search", counter);
    stages.interrupted("search");
    let values: Vec<f64> = trace.iter().map(|r| r.value).collect();
    Ok((stages.finish(lower_median(&values), counter), trace))
}
