use super::{EstimateReport, StageRecorder};
use crate::dist::RandomSource;
use crate::error::{invalid, Result};
use crate::kernels::{aest_median, seq_aest, ExperimentCounter, QVar};
use crate::stats::LogBase;

/// Estimates the truncated mean `μ_{a,b} = E[X 1{a < X ≤ b}]` by amplitude
/// estimation on `V = R_{a,b}(U ⊗ I)`, whose good amplitude is `μ_{a,b}/b`.
/// With probability `1 - δ` the error is at most
/// `√(b μ_{a,b}) log(1/δ)/n + b log(1/δ)²/n²`.
///
/// The empty range `a = b = 0` returns 0 without charging anything.
#[allow(clippy::too_many_arguments)]
pub fn bern_est(
    x: &QVar,
    n: f64,
    a: f64,
    b: f64,
    delta: f64,
    log: LogBase,
    rng: &mut RandomSource,
    counter: &mut ExperimentCounter,
) -> Result<EstimateReport> {
    let mut stages = StageRecorder::new(counter);
    if a == 0.0 && b == 0.0 {
        stages.mark("bern", counter);
        return Ok(stages.finish(0.0, counter));
    }
    if !(a >= 0.0 && a < b && b.is_finite()) {
        return Err(invalid(format!("Bernoulli estimator needs 0 <= a < b, got a={a} b={b}")));
    }
    let amplitude = (x.dist.truncated_mean(a, b)? / b).clamp(0.0, 1.0);
    let est = aest_median(amplitude, n, delta, log, rng, counter, x.oracle_composite())?;
    stages.mark("bern", counter);
    Ok(stages.finish(b * est, counter))
}

pub(crate) fn check_unit_support(x: &QVar) -> Result<()> {
    if x.dist.min() < 0.0 || x.dist.max() > 1.0 {
        return Err(invalid(format!("support [{}, {}] is not inside [0, 1]", x.dist.min(), x.dist.max())));
    }
    Ok(())
}

/// Sequential Bernoulli estimator for `X` in `[0, 1]`: sequential amplitude
/// estimation on the mean, returning `1/T²`. A constant-factor estimate with
/// `E[1/μ̃] ≤ c′/μ` and `E[√μ̃] ≤ c″√μ`.
///
/// A zero mean never terminates on its own, so it needs a budgeted counter;
/// an interrupted run reports 0.
pub fn seq_bern_est(x: &QVar, rng: &mut RandomSource, counter: &mut ExperimentCounter) -> Result<EstimateReport> {
    check_unit_support(x)?;
    let mean = x.dist.mean().clamp(0.0, 1.0);
    if mean == 0.0 && counter.budget().is_none() {
        return Err(invalid("sequential estimation of a zero mean needs a budget"));
    }
    let mut stages = StageRecorder::new(counter);
    let out = seq_aest(mean, rng, counter, x.oracle_composite())?;
    stages.mark("seq-bern", counter);
    if out.interrupted {
        stages.interrupted("seq-bern");
    }
    Ok(stages.finish(out.estimate, counter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::FiniteDist;
    use std::f64::consts::PI;

    fn qv(values: &[f64], probs: &[f64]) -> QVar {
        QVar::new(FiniteDist::new(values, probs).unwrap())
    }

    // smallest n >= log(1/δ) whose register size ⌈2πn/log(1/δ)⌉ equals m
    fn n_for_register(m: u64, l: f64) -> f64 {
        (m as f64 - 1.0) * l / (2.0 * PI) + 1e-6
    }

    #[test]
    fn zero_variable_is_zero() {
        let x = qv(&[0.0], &[1.0]);
        let mut rng = RandomSource::new(1, 0);
        let r = bern_est(&x, 50.0, 0.0, 1.0, 0.1, LogBase::Natural, &mut rng, &mut ExperimentCounter::new()).unwrap();
        assert_eq!(r.estimate, 0.0);
        assert!(r.totals.oracle_experiments > 0);
        let r = bern_est(&x, 50.0, 0.0, 0.0, 0.1, LogBase::Natural, &mut rng, &mut ExperimentCounter::new()).unwrap();
        assert_eq!(r.estimate, 0.0);
        assert_eq!(r.totals.oracle_experiments, 0);
    }

    #[test]
    fn on_grid_half_is_exact() {
        let x = qv(&[0.0, 1.0], &[0.5, 0.5]);
        let l = 10f64.ln();
        let mut rng = RandomSource::new(2, 0);
        for m in [8u64, 64, 200] {
            let n = n_for_register(m, l);
            let r = bern_est(&x, n, 0.0, 1.0, 0.1, LogBase::Natural, &mut rng, &mut ExperimentCounter::new()).unwrap();
            assert!((r.estimate - 0.5).abs() < 1e-15, "m={m} est={}", r.estimate);
            let copies = (6.0 * l).ceil() as u64;
            assert_eq!(r.totals.oracle_experiments, copies * (2 * m * 2 + 1));
            assert_eq!(r.stage_total(), r.totals.oracle_experiments);
        }
    }

    #[test]
    fn coverage_of_the_error_bound() {
        let x = qv(&[0.0, 1.0], &[0.5, 0.5]);
        let l = 10f64.ln();
        let n = 200.0;
        let bound = 0.5f64.sqrt() * l / n + l * l / (n * n);
        let mut rng = RandomSource::new(3, 0);
        let trials = 10_000;
        let fails = (0..trials)
            .filter(|_| {
                let r = bern_est(&x, n, 0.0, 1.0, 0.1, LogBase::Natural, &mut rng, &mut ExperimentCounter::new()).unwrap();
                (r.estimate - 0.5).abs() > bound
            })
            .count();
        assert!((fails as f64) / (trials as f64) <= 0.1, "fails={fails}");
    }

    #[test]
    fn nested_layers_add_up_on_grid() {
        // amplitudes 1/2, 1/4 and 1/2 all sit on the M = 12 grid
        let x = qv(&[0.0, 1.0, 2.0], &[0.25, 0.5, 0.25]);
        let l = 10f64.ln();
        let n = n_for_register(12, l);
        let mut rng = RandomSource::new(4, 0);
        let mut c = ExperimentCounter::new();
        let low = bern_est(&x, n, 0.0, 1.0, 0.1, LogBase::Natural, &mut rng, &mut c).unwrap().estimate;
        let high = bern_est(&x, n, 1.0, 2.0, 0.1, LogBase::Natural, &mut rng, &mut c).unwrap().estimate;
        let both = bern_est(&x, n, 0.0, 2.0, 0.1, LogBase::Natural, &mut rng, &mut c).unwrap().estimate;
        assert!((low - 0.5).abs() < 1e-12);
        assert!((high - 0.5).abs() < 1e-12);
        assert!((both - 1.0).abs() < 1e-12);
        assert!((low + high - both).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_ranges() {
        let x = qv(&[0.0, 1.0], &[0.5, 0.5]);
        let mut rng = RandomSource::new(5, 0);
        let mut c = ExperimentCounter::new();
        assert!(bern_est(&x, 50.0, -1.0, 1.0, 0.1, LogBase::Natural, &mut rng, &mut c).is_err());
        assert!(bern_est(&x, 50.0, 1.0, 1.0, 0.1, LogBase::Natural, &mut rng, &mut c).is_err());
        assert!(bern_est(&x, 1.0, 0.0, 1.0, 0.1, LogBase::Natural, &mut rng, &mut c).is_err());
        assert!(bern_est(&x, 50.0, 0.0, 1.0, 0.0, LogBase::Natural, &mut rng, &mut c).is_err());
    }

    #[test]
    fn sequential_cases() {
        let mut rng = RandomSource::new(6, 0);
        let one = qv(&[1.0], &[1.0]);
        let r = seq_bern_est(&one, &mut rng, &mut ExperimentCounter::new()).unwrap();
        assert_eq!(r.estimate, 1.0 / 16.0);
        assert_eq!(r.totals.aa_applications, 4);

        let zero = qv(&[0.0], &[1.0]);
        let mut c = ExperimentCounter::with_budget(500);
        let r = seq_bern_est(&zero, &mut rng, &mut c).unwrap();
        assert_eq!(r.estimate, 0.0);
        assert_eq!(r.totals.oracle_experiments, 500);
        assert!(r.totals.interrupted);
        assert_eq!(r.interrupted_stages, vec!["seq-bern".to_string()]);
        assert!(seq_bern_est(&zero, &mut rng, &mut ExperimentCounter::new()).is_err());
        assert!(seq_bern_est(&qv(&[0.0, 2.0], &[0.5, 0.5]), &mut rng, &mut ExperimentCounter::new()).is_err());
    }

    #[test]
    fn sequential_moments_stay_in_envelope() {
        let mu = 0.04;
        let x = qv(&[0.0, 1.0], &[1.0 - mu, mu]);
        let mut rng = RandomSource::new(7, 0);
        let trials = 100_000;
        let (mut inv, mut t, mut t2) = (0.0, 0.0, 0.0);
        for _ in 0..trials {
            let r = seq_bern_est(&x, &mut rng, &mut ExperimentCounter::new()).unwrap();
            inv += 1.0 / r.estimate;
            let aa = r.totals.aa_applications as f64;
            t += aa;
            t2 += aa * aa;
        }
        let n = trials as f64;
        let profile = crate::estimators::ConstantProfile::calibrated();
        // 1/μ̃ = T², so both sides are the same sample average
        assert!(inv / n <= profile.c_prime_seq / mu * 1.05);
        assert!(t / n <= (t2 / n).sqrt());
    }
}
