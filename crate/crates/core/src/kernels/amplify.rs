use std::f64::consts::FRAC_PI_2;

use super::{AppCost, ExperimentCounter};
use crate::dist::RandomSource;
use crate::error::{invalid, Result};

/// Geometric growth factor of the sequential amplification schedule.
pub const GROWTH: f64 = 1.1;

/// `θ = arcsin(√p)`, the rotation angle of the state `V|0>` toward the good subspace.
pub fn grover_angle(p: f64) -> Result<f64> {
    check_prob(p)?;
    Ok(angle(p))
}

/// Probability of measuring the good subspace after `n` Grover iterations:
/// `sin²((2n + 1) θ)`.
pub fn aamp_success_prob(p: f64, n: u64) -> Result<f64> {
    check_prob(p)?;
    Ok(success_prob(angle(p), n))
}

pub(crate) fn check_prob(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("amplitude {p} outside [0, 1]")));
    }
    Ok(())
}

fn angle(p: f64) -> f64 {
    if p >= 1.0 {
        FRAC_PI_2
    } else {
        p.sqrt().asin()
    }
}

fn success_prob(theta: f64, n: u64) -> f64 {
    let s = ((2 * n + 1) as f64 * theta).sin();
    s * s
}

/// Iteration range of round `l >= 1`: `{⌈λ^(l-1)⌉, ..., max(⌈λ^(l-1)⌉, ⌈λ^l⌉ - 1)}`.
pub(crate) fn round_range(l: u32) -> (u64, u64) {
    let lo = GROWTH.powi(l as i32 - 1).ceil() as u64;
    let hi = (GROWTH.powi(l as i32).ceil() as u64).saturating_sub(1).max(lo);
    (lo, hi)
}

/// Result of one run of sequential amplitude amplification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeqAmpOutcome {
    pub succeeded: bool,
    pub rounds: u32,
    /// Applications of `V`, `V†` and `I - 2Π` charged by this run.
    pub aa_total: u64,
    /// Oracle experiments charged by this run.
    pub oracle_total: u64,
}

/// Sequential amplitude amplification. Round `l` draws `n` uniformly from
/// [`round_range`], performs `AAmp(V, Π, n)` (`2n + 1` applications of
/// `V`/`V†`, `n` reflections) and measures `{I - Π, Π}`. Stops on the first
/// good outcome or when the counter's budget runs out.
///
/// A zero amplitude never succeeds, so it requires a budgeted counter.
pub fn seq_aamp(p: f64, rng: &mut RandomSource, counter: &mut ExperimentCounter, cost: AppCost) -> Result<SeqAmpOutcome> {
    check_prob(p)?;
    if p == 0.0 && counter.budget().is_none() {
        return Err(invalid("sequential amplification of a zero amplitude needs a budget"));
    }
    let theta = angle(p);
    let start = counter.totals();
    let mut rounds = 0;
    let succeeded = loop {
        if counter.interrupted() {
            break false;
        }
        rounds += 1;
        let (lo, hi) = round_range(rounds);
        let n = rng.int_inclusive(lo, hi);
        if run_round(n, counter, cost).is_err() {
            break false;
        }
        if rng.bernoulli(success_prob(theta, n)) {
            break true;
        }
    };
    Ok(SeqAmpOutcome {
        succeeded,
        rounds,
        aa_total: counter.aa_applications() - start.aa_applications,
        oracle_total: counter.oracle_experiments() - start.oracle_experiments,
    })
}

/// Charges one `AAmp(n)` plus measurement, application by application when
/// the budget may cut the round short.
fn run_round(n: u64, counter: &mut ExperimentCounter, cost: AppCost) -> Result<(), super::Interrupted> {
    let whole = (2 * n + 1) * cost.per_application + cost.measurement;
    let fits = counter.remaining().is_none_or(|left| whole <= left);
    if fits {
        return counter.charge(whole, 3 * n + 1);
    }
    counter.charge(cost.per_application, 1)?;
    // whole Grover iterations that still fit, then unit steps until the cut
    let per_iter = 2 * cost.per_application;
    let left = counter.remaining().unwrap_or(u64::MAX);
    let full = left.checked_div(per_iter).map_or(n, |f| f.min(n));
    counter.charge(full * per_iter, 3 * full)?;
    for _ in full..n {
        counter.charge(0, 1)?; // I - 2Π
        counter.charge(cost.per_application, 1)?; // V†
        counter.charge(cost.per_application, 1)?; // V
    }
    counter.charge(cost.measurement, 0)
}

/// Output of sequential amplitude estimation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeqEstimate {
    /// `1 / T²`, or 0 when the run was interrupted.
    pub estimate: f64,
    pub aa_total: u64,
    pub oracle_total: u64,
    pub interrupted: bool,
}

/// Sequential amplitude estimation: run [`seq_aamp`] and read the estimate
/// off its amplification count, `p̃ = 1/T²`.
pub fn seq_aest(p: f64, rng: &mut RandomSource, counter: &mut ExperimentCounter, cost: AppCost) -> Result<SeqEstimate> {
    let out = seq_aamp(p, rng, counter, cost)?;
    let estimate = if out.succeeded { 1.0 / (out.aa_total as f64).powi(2) } else { 0.0 };
    Ok(SeqEstimate { estimate, aa_total: out.aa_total, oracle_total: out.oracle_total, interrupted: !out.succeeded })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angles() {
        assert_eq!(grover_angle(0.0).unwrap(), 0.0);
        assert_eq!(grover_angle(1.0).unwrap(), PI / 2.0);
        assert!((grover_angle(0.25).unwrap() - PI / 6.0).abs() < 1e-15);
        assert!(grover_angle(1.1).is_err());
        assert!(grover_angle(-0.1).is_err());
    }

    #[test]
    fn success_probabilities() {
        assert!((aamp_success_prob(1.0, 3).unwrap() - 1.0).abs() < 1e-15);
        assert!((aamp_success_prob(0.25, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((aamp_success_prob(0.5, 1).unwrap() - 0.5).abs() < 1e-15);
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            assert!((aamp_success_prob(p, 0).unwrap() - p).abs() < 1e-15);
        }
    }

    #[test]
    fn round_ranges_are_never_empty_and_grow() {
        assert_eq!(round_range(1), (1, 1));
        assert_eq!(round_range(2), (2, 2));
        let mut prev = 0;
        for l in 1..200 {
            let (lo, hi) = round_range(l);
            assert!(lo <= hi);
            assert!(lo >= prev);
            prev = lo;
        }
        // far out, the range tracks [λ^(l-1), λ^l - 1]
        let (lo, hi) = round_range(100);
        assert_eq!(lo, GROWTH.powi(99).ceil() as u64);
        assert_eq!(hi, GROWTH.powi(100).ceil() as u64 - 1);
    }

    #[test]
    fn certain_amplitude_succeeds_in_round_one() {
        let mut rng = RandomSource::new(3, 0);
        let mut c = ExperimentCounter::new();
        let out = seq_aamp(1.0, &mut rng, &mut c, AppCost::UNIT).unwrap();
        assert!(out.succeeded);
        assert_eq!(out.rounds, 1);
        // round 1 always draws n = 1
        assert_eq!(out.aa_total, 4);
        assert_eq!(out.oracle_total, 3 + 1);
        let est = seq_aest(1.0, &mut rng, &mut ExperimentCounter::new(), AppCost::UNIT).unwrap();
        assert_eq!(est.estimate, 1.0 / 16.0);
    }

    #[test]
    fn zero_amplitude_exhausts_budget() {
        let mut rng = RandomSource::new(3, 0);
        for budget in [1, 7, 100, 1001] {
            let mut c = ExperimentCounter::with_budget(budget);
            let out = seq_aamp(0.0, &mut rng, &mut c, AppCost::new(2, 1)).unwrap();
            assert!(!out.succeeded);
            assert!(c.interrupted());
            assert_eq!(c.oracle_experiments(), budget);
        }
        let est = seq_aest(0.0, &mut rng, &mut ExperimentCounter::with_budget(50), AppCost::UNIT).unwrap();
        assert!(est.interrupted);
        assert_eq!(est.estimate, 0.0);
        assert!(seq_aamp(0.0, &mut rng, &mut ExperimentCounter::new(), AppCost::UNIT).is_err());
    }

    #[test]
    fn tallies_match_round_formula() {
        let mut rng = RandomSource::new(11, 0);
        let mut c = ExperimentCounter::new();
        let out = seq_aamp(0.003, &mut rng, &mut c, AppCost::new(2, 1)).unwrap();
        assert!(out.succeeded);
        // aa = Σ(3n+1), oracle = Σ(2(2n+1)+1) = Σ(4n+3); eliminate Σn
        let r = out.rounds as u64;
        let sum_n = (out.aa_total - r) / 3;
        assert_eq!(out.aa_total, 3 * sum_n + r);
        assert_eq!(out.oracle_total, 4 * sum_n + 3 * r);
    }

    #[test]
    fn small_amplitudes_terminate() {
        let mut rng = RandomSource::new(5, 1);
        for _ in 0..2000 {
            let mut c = ExperimentCounter::new();
            assert!(seq_aamp(1e-4, &mut rng, &mut c, AppCost::UNIT).unwrap().succeeded);
        }
    }
}
