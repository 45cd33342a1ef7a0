//! Quantile estimation by repeated conditional sampling.
//!
//! cargo run --release --example quantile

use qmean::dist::parse_named;
use qmean::estimators::{quantile_est_traced, ConstantProfile};
use qmean::{ExperimentCounter, QVar, RandomSource};

fn main() -> qmean::Result<()> {
    let profile = ConstantProfile::calibrated();
    let x = QVar::new(parse_named("uniform:1..100:100")?);
    let mut rng = RandomSource::new(3, 0);
    println!("c = {:.4}, c' = {:.4}", profile.c, profile.c_prime);
    for p in [0.2, 0.05, 0.01, 0.001] {
        let mut counter = ExperimentCounter::new();
        let (report, reps) = quantile_est_traced(&x, p, 0.1, &profile, &mut rng, &mut counter)?;
        let (lo, hi) = (x.dist.quantile(p)?, x.dist.quantile(profile.c * p)?);
        let values: Vec<f64> = reps.iter().map(|r| r.value).collect();
        println!(
            "p = {p:<6} estimate {:>5} target [{lo}, {hi}]  {} reps, cap {} each, total {}",
            report.estimate,
            reps.len(),
            (profile.c_prime / p.sqrt()).ceil(),
            report.totals.oracle_experiments
        );
        println!("          repetition values {values:?}");
    }
    Ok(())
}
