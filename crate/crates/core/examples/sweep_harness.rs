//! The sweep harness as a library: run a config, write CSV, summarize and fit.
//!
//! cargo run --release --example sweep_harness

use qmean::estimators::ConstantProfile;
use qmean::harness::{fit_rows, run_sweep, summarize, summary_tsv, write_csv, BoundMode, SweepConfig, XAxis, YAxis};

fn main() -> qmean::Result<()> {
    let cfg = SweepConfig::from_json(
        r#"{
            "estimator": "subgauss",
            "distribution": "pareto:2.5:1:512",
            "grid": {"n": [32, 64, 128, 256], "delta": [0.1]},
            "trials": 100,
            "seed": 1
        }"#,
    )?;
    let out = run_sweep(&cfg)?;
    let path = std::env::temp_dir().join("qmean_sweep_example.csv");
    write_csv(std::fs::File::create(&path)?, &out.rows)?;
    println!("{} rows -> {}", out.rows.len(), path.display());

    let profile = ConstantProfile::resolve(&cfg.profile)?;
    print!("{}", summary_tsv(&summarize(&out.rows, BoundMode::Auto, &profile)?));
    let slope = fit_rows(&out.rows, XAxis::OracleExperiments, YAxis::AbsError, 90.0)?;
    println!("p90 error vs oracle experiments: slope {slope:.3}");

    // a grid point that violates a precondition is skipped, not fatal
    let bad = SweepConfig::from_json(
        r#"{"estimator": "bern", "distribution": "bernoulli:0.5", "grid": {"n": [0.5, 20], "delta": [0.1]}, "trials": 3, "seed": 2}"#,
    )?;
    let out = run_sweep(&bad)?;
    for s in &out.skipped {
        println!("skipped {}: {}", s.point, s.reason);
    }
    Ok(())
}
