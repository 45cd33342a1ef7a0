//! Classical mean estimators and two-distribution distinguishability bounds.

use serde::Serialize;

use crate::dist::FiniteDist;
use crate::error::{invalid, Result};
use crate::stats::lower_median;

pub fn empirical_mean(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(invalid("empirical mean of no samples"));
    }
    Ok(samples.iter().sum::<f64>() / samples.len() as f64)
}

/// Number of groups used by [`median_of_means`]: `⌈ln(1/δ)⌉`.
pub fn mom_groups(delta: f64) -> Result<usize> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("failure probability {delta} outside (0, 1)")));
    }
    Ok(((1.0 / delta).ln().ceil() as usize).max(1))
}

/// Median of means: `k = ⌈ln(1/δ)⌉` consecutive groups of `⌊n/k⌋` samples
/// (the leftover tail is dropped), lower median of the group means.
pub fn median_of_means(samples: &[f64], delta: f64) -> Result<f64> {
    let k = mom_groups(delta)?;
    if samples.len() < k {
        return Err(invalid(format!("median of means with {k} groups needs at least {k} samples, got {}", samples.len())));
    }
    let size = samples.len() / k;
    let means: Vec<f64> = samples.chunks_exact(size).take(k).map(|g| g.iter().sum::<f64>() / size as f64).collect();
    Ok(lower_median(&means))
}

/// Truncated empirical mean for non-negative samples: values above
/// `b = √(n E[X²])` count as 0.
pub fn classical_truncated_mean(samples: &[f64], second_moment: f64, n: usize) -> Result<f64> {
    if samples.len() != n {
        return Err(invalid(format!("expected {n} samples, got {}", samples.len())));
    }
    if n == 0 {
        return Err(invalid("truncated mean of no samples"));
    }
    if !(second_moment > 0.0) {
        return Err(invalid(format!("second moment {second_moment} must be positive")));
    }
    if let Some(&v) = samples.iter().find(|&&v| v < 0.0) {
        return Err(invalid(format!("truncated mean needs non-negative samples, got {v}")));
    }
    let b = (n as f64 * second_moment).sqrt();
    Ok(samples.iter().map(|&v| if v <= b { v } else { 0.0 }).sum::<f64>() / n as f64)
}

/// `D(p0 ‖ p1) = Σ p0(x) ln(p0(x)/p1(x))`; `f64::INFINITY` when `p0` puts
/// mass where `p1` has none.
pub fn kl_divergence(p0: &FiniteDist, p1: &FiniteDist) -> f64 {
    let mut total = 0.0;
    for (x, a) in p0.atoms() {
        let b = p1.prob_of(x);
        if b == 0.0 {
            return f64::INFINITY;
        }
        total += a * (a / b).ln();
    }
    total.max(0.0)
}

/// Overlap `Σ √(p0(x) p1(x))` of the amplitude-encoded states.
pub fn fidelity(p0: &FiniteDist, p1: &FiniteDist) -> f64 {
    p0.atoms().map(|(x, a)| (a * p1.prob_of(x)).sqrt()).sum::<f64>().min(1.0)
}

/// Best success probability for telling `T` copies of the two states apart:
/// `½(1 + √(1 - F^(2T)))`.
pub fn helstrom_success(p0: &FiniteDist, p1: &FiniteDist, t: u64) -> Result<f64> {
    if t < 1 {
        return Err(invalid("need at least one copy"));
    }
    Ok(helstrom_from_fidelity(fidelity(p0, p1), t))
}

fn helstrom_from_fidelity(f: f64, t: u64) -> f64 {
    let overlap = f.powf(2.0 * t as f64);
    0.5 * (1.0 + (1.0 - overlap).max(0.0).sqrt())
}

/// Copies needed to distinguish the pair with failure `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CopyBound {
    Finite(u64),
    /// the distributions coincide
    Infinite,
}

/// `T ≥ ln(1/(4δ)) / D(p0 ‖ p1)`, rounded up and at least 1.
pub fn distinguish_t_lower(p0: &FiniteDist, p1: &FiniteDist, delta: f64) -> Result<CopyBound> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("failure probability {delta} outside (0, 1)")));
    }
    let kl = kl_divergence(p0, p1);
    if kl == 0.0 {
        return Ok(CopyBound::Infinite);
    }
    let t = ((1.0 / (4.0 * delta)).ln() / kl).ceil();
    Ok(CopyBound::Finite(if t.is_finite() { t.max(1.0) as u64 } else { 1 }))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub kl: f64,
    pub fidelity: f64,
    /// at `copies`
    pub helstrom_success: f64,
    pub copies: u64,
    pub t_lower: CopyBound,
}

pub fn bound_report(p0: &FiniteDist, p1: &FiniteDist, delta: f64, copies: u64) -> Result<BoundReport> {
    Ok(BoundReport {
        kl: kl_divergence(p0, p1),
        fidelity: fidelity(p0, p1),
        helstrom_success: helstrom_success(p0, p1, copies)?,
        copies,
        t_lower: distinguish_t_lower(p0, p1, delta)?,
    })
}
