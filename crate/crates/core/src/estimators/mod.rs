//! Quantum mean estimators simulated on finite distributions.
//!
//! Every estimator charges the caller's [`ExperimentCounter`](crate::ExperimentCounter)
//! and returns an [`EstimateReport`] whose per-stage costs add up to the
//! experiments it performed.

mod bernoulli;
mod calibrate;
mod profile;
mod quantile;
mod report;
mod sequential;
mod subgauss;

pub use bernoulli::{bern_est, seq_bern_est};
pub use calibrate::{amplitude_stats, calibrate_constants, calibration_stats, AmplitudeStats, DEFAULT_GRID, MIN_TRIALS};
pub use profile::{coupled_c, BaseConstants, ConstantProfile, ProfileMode, DESK_D, REFERENCE_BASE};
pub use quantile::{cond_sample_above, quantile_est, quantile_est_traced, CondSample, QuantileRep};
pub use report::{EstimateReport, StageCost};
pub use sequential::{seq_relative_est, INNER_DELTA};
pub use subgauss::{relative_est, subgauss_est, SubGaussPlan};

pub(crate) use report::StageRecorder;
