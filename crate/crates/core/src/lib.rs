//! Classical simulator for quantum mean estimation.
//!
//! The crate simulates quantum mean estimators exactly on finite
//! distributions: amplitude amplification and estimation are sampled from
//! their closed-form outcome laws, while an [`ExperimentCounter`] tallies the
//! quantum experiments the real circuits would perform.
//!
//! - [`dist`]: finite distributions, transforms, generators and hard instances
//! - [`kernels`]: amplitude amplification/estimation and cost accounting
//! - [`estimators`]: quantile, Bernoulli, sub-Gaussian, relative and sequential estimators
//! - [`baselines`]: classical baselines and distinguishability bounds
//! - [`harness`]: sweeps, CSV output, summaries, slope fits and validation

// `!(x > 0.0)` is deliberate throughout: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod dist;
pub mod error;
pub mod estimators;
pub mod harness;
pub mod kernels;
pub mod stats;

pub use dist::{FiniteDist, Moments, RandomSource};
pub use error::{Error, Result};
pub use kernels::{ExperimentCounter, QVar};
pub use stats::LogBase;
