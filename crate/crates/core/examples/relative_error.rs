//! Relative-error estimation, with a known coefficient-of-variation bound and
//! with the sequential estimator that needs none.
//!
//! cargo run --release --example relative_error

use qmean::dist::parse_named;
use qmean::estimators::{relative_est, seq_relative_est, ConstantProfile};
use qmean::{ExperimentCounter, QVar, RandomSource};

fn main() -> qmean::Result<()> {
    let profile = ConstantProfile::calibrated();
    let mut rng = RandomSource::new(11, 0);
    let (eps, delta) = (0.1, 0.1);
    println!("mu\testimator\testimate\trel_error\toracle_experiments");
    for mu in [0.5f64, 0.1, 0.01] {
        let x = QVar::new(parse_named(&format!("bernoulli:{mu}"))?);
        let ch = ((1.0 - mu) / mu).sqrt();
        let mut c = ExperimentCounter::new();
        let r = relative_est(&x, ch, eps, delta, &profile, &mut rng, &mut c)?;
        println!("{mu}\trelative\t{:.6}\t{:.4}\t{}", r.estimate, (r.estimate - mu).abs() / mu, r.totals.oracle_experiments);

        let mut c = ExperimentCounter::new();
        let r = seq_relative_est(&x, eps, delta, &profile, &mut rng, &mut c)?;
        println!("{mu}\tseq-relative\t{:.6}\t{:.4}\t{}", r.estimate, (r.estimate - mu).abs() / mu, r.totals.oracle_experiments);
        for s in &r.stage_costs {
            println!("\t  {:<28} {}", s.stage, s.oracle_experiments);
        }
    }
    Ok(())
}
