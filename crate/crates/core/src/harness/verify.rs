use serde::Serialize;

use crate::error::{invalid, Result};
use crate::kernels::ae_outcome_dist;
use crate::kernels::statevector::{qpe_outcome_dist, total_variation, validation_amplitudes};

pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AeCheck {
    pub m: usize,
    pub p: f64,
    pub tv: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AeReport {
    pub checks: Vec<AeCheck>,
    pub max_tv: f64,
}

impl AeReport {
    pub fn passed(&self) -> bool {
        self.max_tv <= VERIFY_TOLERANCE
    }
}

/// Compares the closed-form outcome law with the statevector simulation for
/// `m ∈ {2, 4, ..., max_m}` and the validation amplitudes.
pub fn verify_ae(max_m: usize) -> Result<AeReport> {
    if !(2..=32).contains(&max_m) {
        return Err(invalid(format!("max register size must be within 2..=32, got {max_m}")));
    }
    let mut checks = Vec::new();
    let mut m = 2;
    while m <= max_m {
        for p in validation_amplitudes() {
            let tv = total_variation(&ae_outcome_dist(p, m as u64)?, &qpe_outcome_dist(p, m)?);
            checks.push(AeCheck { m, p, tv });
        }
        m *= 2;
    }
    let max_tv = checks.iter().map(|c| c.tv).fold(0.0, f64::max);
    Ok(AeReport { checks, max_tv })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_grid() {
        let r = verify_ae(32).unwrap();
        assert_eq!(r.checks.len(), 5 * 20);
        assert!(r.passed(), "max tv {}", r.max_tv);
        let zero = r.checks.iter().find(|c| c.m == 8 && c.p == 0.0).unwrap();
        assert!(zero.tv < 1e-15);
        let half = r.checks.iter().find(|c| c.m == 4 && c.p == 0.5).unwrap();
        assert!(half.tv <= 1e-10);
        assert!(verify_ae(64).is_err());
    }
}
