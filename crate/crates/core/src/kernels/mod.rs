//! Exact classical simulation of amplitude amplification and estimation.
//!
//! Every routine here acts on a known amplitude `p = ||Π V|0>||²` and draws
//! measurement outcomes from their exact distributions, charging an
//! [`ExperimentCounter`] as the corresponding quantum circuit would.

mod amplify;
mod counter;
mod estimate;
pub mod statevector;

pub use amplify::{aamp_success_prob, grover_angle, seq_aamp, seq_aest, SeqAmpOutcome, SeqEstimate, GROWTH};
pub use counter::{CounterTotals, ExperimentCounter, Interrupted};
pub use estimate::{ae_outcome_dist, aest_median, aest_sample, fejer, AeOutcome};

use crate::dist::FiniteDist;

/// Oracle-experiment footprint of one application of the unitary being
/// amplified, and of one measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AppCost {
    pub per_application: u64,
    pub measurement: u64,
}

impl AppCost {
    pub const UNIT: AppCost = AppCost { per_application: 1, measurement: 1 };

    pub fn new(per_application: u64, measurement: u64) -> Self {
        Self { per_application, measurement }
    }
}

/// A q-random variable: the value distribution together with the number of
/// quantum experiments charged for each primitive it exposes.
#[derive(Clone, Debug)]
pub struct QVar {
    pub dist: FiniteDist,
    /// per application of `U` or `U†`
    pub cost_u: u64,
    /// per application of a comparison or rotation oracle
    pub cost_oracle: u64,
    /// per measurement `M`
    pub cost_measure: u64,
}

impl QVar {
    pub fn new(dist: FiniteDist) -> Self {
        Self { dist, cost_u: 1, cost_oracle: 1, cost_measure: 1 }
    }

    /// Same cost model over a different distribution (for derived variables
    /// such as `Y+`, `Y-` or `(X - X')² / 2`).
    pub fn derive(&self, dist: FiniteDist) -> Self {
        Self { dist, ..*self }
    }

    /// Footprint of `V = O (U ⊗ I)` where `O` is a comparison or rotation oracle.
    pub fn oracle_composite(&self) -> AppCost {
        AppCost::new(self.cost_u + self.cost_oracle, self.cost_measure)
    }

    /// Cost of one classical sample: prepare with `U`, then measure with `M`.
    pub fn classical_sample_cost(&self) -> u64 {
        self.cost_u + self.cost_measure
    }
}
