//! Experiment sweeps, CSV output, summaries, slope fits and validation.

mod config;
mod summary;
mod sweep;
mod verify;

pub use config::{EstimatorKind, Grid, GridPoint, SweepConfig, Uses, ALL_ESTIMATORS};
pub use summary::{
    fit_loglog_slope, fit_rows, group_rows, guarantee_bound, slope_points, summarize, summary_tsv, Bound, BoundMode, Summary, XAxis, YAxis,
};
pub use sweep::{
    bern_upper, default_ch, format_float, read_csv, run_sweep, target, write_csv, SkippedPoint, SweepOutput, SweepRow, CSV_HEADER,
};
pub use verify::{verify_ae, AeCheck, AeReport, VERIFY_TOLERANCE};
