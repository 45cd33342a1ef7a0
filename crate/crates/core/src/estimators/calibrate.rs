use rayon::prelude::*;

use super::{BaseConstants, ConstantProfile, ProfileMode};
use crate::dist::RandomSource;
use crate::error::{invalid, Result};
use crate::kernels::{seq_aamp, AppCost, ExperimentCounter};
use crate::stats::{mean, percentile, LogBase};

/// Amplitudes used for the reference calibration.
pub const DEFAULT_GRID: [f64; 5] = [1e-4, 1e-3, 1e-2, 1e-1, 0.5];

pub const MIN_TRIALS: usize = 1000;

/// Monte Carlo summary of sequential amplification at one amplitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeStats {
    pub p: f64,
    /// `√p · E[T]`, `T` the conditional sampler's oracle cost
    pub sampler_mean: f64,
    /// `√p ·` 10th percentile of that cost
    pub sampler_p10: f64,
    /// `p · E[T²]`, `T` the amplification count
    pub second_moment: f64,
    /// `E[1/T] / √p`
    pub inverse_moment: f64,
    /// 7/8 quantile of `|1/T² - p| / p`
    pub relative_error: f64,
}

/// Runs `trials` sequential amplifications at `p`; trial `t` uses stream
/// `stream_base + t`.
pub fn amplitude_stats(p: f64, trials: usize, seed: u64, stream_base: u64) -> Result<AmplitudeStats> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid(format!("calibration amplitude {p} outside (0, 1]")));
    }
    // the conditional sampler's footprint: V = C(U ⊗ I), then one value measurement
    let cost = AppCost::new(2, 1);
    let runs: Vec<(f64, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = RandomSource::new(seed, stream_base + t);
            let mut counter = ExperimentCounter::new();
            let out = seq_aamp(p, &mut rng, &mut counter, cost).expect("positive amplitude terminates");
            ((out.oracle_total + cost.measurement) as f64, out.aa_total as f64)
        })
        .collect();
    let sampler: Vec<f64> = runs.iter().map(|r| r.0).collect();
    let aa: Vec<f64> = runs.iter().map(|r| r.1).collect();
    let rel: Vec<f64> = aa.iter().map(|t| (1.0 / (t * t) - p).abs() / p).collect();
    let sp = p.sqrt();
    Ok(AmplitudeStats {
        p,
        sampler_mean: sp * mean(&sampler),
        sampler_p10: sp * percentile(&sampler, 10.0),
        second_moment: p * mean(&aa.iter().map(|t| t * t).collect::<Vec<_>>()),
        inverse_moment: mean(&aa.iter().map(|t| 1.0 / t).collect::<Vec<_>>()) / sp,
        relative_error: percentile(&rel, 87.5),
    })
}

/// Measures the base constants over `grid` and applies the couplings.
/// Deterministic in `seed` regardless of thread count.
pub fn calibrate_constants(grid: &[f64], trials: usize, seed: u64) -> Result<ConstantProfile> {
    let stats = calibration_stats(grid, trials, seed)?;
    let base = BaseConstants {
        c0: stats.iter().map(|s| s.sampler_p10).fold(f64::INFINITY, f64::min),
        c1: stats.iter().map(|s| s.sampler_mean).fold(0.0, f64::max),
        c_seq: stats.iter().map(|s| s.relative_error).fold(0.0, f64::max),
        c_prime_seq: stats.iter().map(|s| s.second_moment).fold(0.0, f64::max),
        c_dprime_seq: stats.iter().map(|s| s.inverse_moment).fold(0.0, f64::max),
    };
    if !(base.c0 < base.c1) {
        return Err(invalid(format!("degenerate grid: c0 = {} is not below c1 = {}", base.c0, base.c1)));
    }
    ConstantProfile::from_base(base, ProfileMode::Calibrated, LogBase::Natural)
}

/// Per-amplitude statistics behind [`calibrate_constants`].
pub fn calibration_stats(grid: &[f64], trials: usize, seed: u64) -> Result<Vec<AmplitudeStats>> {
    if grid.is_empty() {
        return Err(invalid("calibration grid is empty"));
    }
    if trials < MIN_TRIALS {
        return Err(invalid(format!("calibration needs at least {MIN_TRIALS} trials, got {trials}")));
    }
    grid.iter().enumerate().map(|(i, &p)| amplitude_stats(p, trials, seed, (i * trials) as u64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_amplitude_profile() {
        let p = calibrate_constants(&[0.5], 1000, 7).unwrap();
        assert!(p.c0 < p.c1);
        assert_eq!(p.mode, ProfileMode::Calibrated);
    }

    #[test]
    fn deterministic() {
        assert_eq!(calibrate_constants(&[0.5, 0.01], 2000, 9).unwrap(), calibrate_constants(&[0.5, 0.01], 2000, 9).unwrap());
    }

    #[test]
    fn reference_profile_reproduces() {
        let p = calibrate_constants(&DEFAULT_GRID, 100_000, 2024).unwrap();
        assert_eq!(p.base(), crate::estimators::REFERENCE_BASE);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(calibrate_constants(&[], 1000, 1).is_err());
        assert!(calibrate_constants(&[0.5], 999, 1).is_err());
        assert!(calibrate_constants(&[0.0], 1000, 1).is_err());
        // a certain amplitude always stops after one round: no spread
        assert!(calibrate_constants(&[1.0], 1000, 1).is_err());
    }
}
