use std::f64::consts::PI;

use super::amplify::check_prob;
use super::{AppCost, ExperimentCounter};
use crate::dist::RandomSource;
use crate::error::{invalid, Result};
use crate::stats::{lower_median, LogBase};

/// Outcomes up to this register size are sampled from the full table.
const TABLE_LIMIT: u64 = 4096;

/// One canonical amplitude-estimation run: the measured phase index `y` of an
/// `m`-point register and the estimate `sin²(π y / m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AeOutcome {
    pub y: u64,
    pub m: u64,
    pub estimate: f64,
}

impl AeOutcome {
    pub fn new(y: u64, m: u64) -> Self {
        Self { y, m, estimate: phase_estimate(y, m) }
    }
}

fn phase_estimate(y: u64, m: u64) -> f64 {
    // fold onto [0, m/2] so y and m - y give bit-identical estimates
    let y = y.min(m - y);
    let s = (PI * y as f64 / m as f64).sin();
    s * s
}

/// Fejér kernel `F_m(x) = sin²(m π x) / (m² sin²(π x))` evaluated at
/// `x = offset / m`, i.e. `offset` is measured in register grid steps.
/// Periodic in `offset` with period `m`; equals 1 at multiples of `m`.
pub fn fejer(offset: f64, m: u64) -> f64 {
    let mf = m as f64;
    let r = offset - mf * (offset / mf).round();
    if r.abs() < 1e-12 {
        return 1.0;
    }
    if r == r.round() {
        return 0.0;
    }
    let num = (PI * r).sin();
    let den = mf * (PI * r / mf).sin();
    (num / den).powi(2)
}

fn phase_fraction(p: f64) -> f64 {
    if p >= 1.0 {
        0.5
    } else {
        p.sqrt().asin() / PI
    }
}

/// Exact distribution of the phase index measured by canonical amplitude
/// estimation with an `m`-point register. The start state splits evenly over
/// the two Grover eigenvectors with phases `±ω`, `ω = θ/π`, so
/// `Pr[y] = ½ F_m(y/m - ω) + ½ F_m(y/m + ω)`; at `p ∈ {0, 1}` there is a
/// single eigenphase and a single kernel.
pub fn ae_outcome_dist(p: f64, m: u64) -> Result<Vec<f64>> {
    check_prob(p)?;
    if m < 1 {
        return Err(invalid("amplitude estimation needs at least one register state"));
    }
    let centre = m as f64 * phase_fraction(p);
    let degenerate = p == 0.0 || p == 1.0;
    Ok((0..m)
        .map(|y| {
            let y = y as f64;
            if degenerate {
                fejer(y - centre, m)
            } else {
                0.5 * fejer(y - centre, m) + 0.5 * fejer(y + centre, m)
            }
        })
        .collect())
}

fn sample_index(p: f64, m: u64, rng: &mut RandomSource) -> u64 {
    if m <= TABLE_LIMIT {
        let table = ae_outcome_dist(p, m).expect("validated amplitude");
        let u = rng.uniform();
        let mut acc = 0.0;
        for (y, w) in table.iter().enumerate() {
            acc += w;
            if u < acc {
                return y as u64;
            }
        }
        // rounding left a sliver above the total; take the mode
        return table.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0 as u64;
    }
    let mut centre = m as f64 * phase_fraction(p);
    if !(p == 0.0 || p == 1.0) && rng.bernoulli(0.5) {
        centre = m as f64 - centre;
    }
    sample_kernel(centre, m, rng)
}

/// Draws `y` with probability `F_m((y - centre)/m)`, walking outward from the
/// peak. The kernel's 1/k² tails make the expected walk length O(log m).
fn sample_kernel(centre: f64, m: u64, rng: &mut RandomSource) -> u64 {
    let base = centre.floor();
    let frac = centre - base;
    let base = base as i64;
    let mf = m as f64;
    let s = (PI * frac).sin().powi(2);
    let u = rng.uniform();
    let mut acc = 0.0;
    for step in 0..m as i64 {
        let k = if step % 2 == 0 { -(step / 2) } else { step / 2 + 1 };
        let d = k as f64 - frac;
        let w = if d == 0.0 { 1.0 } else { s / (mf * (PI * d / mf).sin()).powi(2) };
        acc += w;
        if u < acc {
            return (base + k).rem_euclid(m as i64) as u64;
        }
    }
    base.rem_euclid(m as i64) as u64
}

/// One canonical amplitude estimation with an `m`-point register: charges
/// `m` Grover iterations (`2m` applications of `V`/`V†`) plus the final
/// measurement up front, then samples the outcome.
pub fn aest_sample(p: f64, m: u64, rng: &mut RandomSource, counter: &mut ExperimentCounter, cost: AppCost) -> Result<AeOutcome> {
    check_prob(p)?;
    if m < 1 {
        return Err(invalid("amplitude estimation needs at least one register state"));
    }
    let _ = counter.charge(2 * m * cost.per_application + cost.measurement, 3 * m);
    Ok(AeOutcome::new(sample_index(p, m, rng), m))
}

/// Median of `⌈6 log(1/δ)⌉` amplitude estimates, each with register size
/// `⌈2π n / log(1/δ)⌉`.
#[allow(clippy::too_many_arguments)]
pub fn aest_median(
    p: f64,
    n: f64,
    delta: f64,
    log: LogBase,
    rng: &mut RandomSource,
    counter: &mut ExperimentCounter,
    cost: AppCost,
) -> Result<f64> {
    check_prob(p)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("failure probability {delta} outside (0, 1)")));
    }
    let l = log.log(1.0 / delta);
    if !(n >= l) {
        return Err(invalid(format!("time parameter {n} below log(1/delta) = {l}")));
    }
    let copies = (6.0 * l).ceil() as usize;
    let m = (2.0 * PI * n / l).ceil() as u64;
    let estimates = (0..copies).map(|_| aest_sample(p, m, rng, counter, cost).map(|o| o.estimate)).collect::<Result<Vec<f64>>>()?;
    Ok(lower_median(&estimates))
}
