//! The amplitude-estimation kernel: exact outcome law, median amplification
//! and the sequential (restartable) variant.
//!
//! cargo run --release --example amplitude_estimation

use qmean::kernels::{ae_outcome_dist, aest_median, aest_sample, seq_aest, AppCost};
use qmean::{ExperimentCounter, LogBase, RandomSource};

fn main() -> qmean::Result<()> {
    let (p, m) = (0.3, 16u64);
    println!("outcome law for p = {p}, M = {m}:");
    for (y, w) in ae_outcome_dist(p, m)?.iter().enumerate().filter(|(_, w)| **w > 1e-3) {
        let est = (std::f64::consts::PI * y as f64 / m as f64).sin().powi(2);
        println!("  y = {y:>2}  estimate {est:.4}  prob {w:.4}");
    }

    let mut rng = RandomSource::new(7, 0);
    let mut counter = ExperimentCounter::new();
    let one = aest_sample(p, 1024, &mut rng, &mut counter, AppCost::new(2, 1))?;
    println!("single run, M = 1024: estimate {:.6}, cost {}", one.estimate, counter.oracle_experiments());

    let mut counter = ExperimentCounter::new();
    let med = aest_median(p, 200.0, 0.01, LogBase::Natural, &mut rng, &mut counter, AppCost::new(2, 1))?;
    println!("median of runs, n = 200, delta = 0.01: estimate {med:.6}, cost {}", counter.oracle_experiments());

    println!("sequential estimation (constant factor, cost ~ 1/sqrt(p)):");
    for p in [0.5, 0.1, 0.01, 0.001] {
        let runs: Vec<_> =
            (0..2000).map(|_| seq_aest(p, &mut rng, &mut ExperimentCounter::new(), AppCost::new(2, 1))).collect::<Result<_, _>>()?;
        let mean_est = runs.iter().map(|r| r.estimate).sum::<f64>() / runs.len() as f64;
        let mean_cost = runs.iter().map(|r| r.oracle_total as f64).sum::<f64>() / runs.len() as f64;
        println!("  p = {p:<6} mean 1/T^2 {mean_est:.3e}  mean cost {mean_cost:>8.1}  cost*sqrt(p) {:.2}", mean_cost * p.sqrt());
    }

    // a budget interrupts a zero amplitude
    let mut capped = ExperimentCounter::with_budget(500);
    let zero = seq_aest(0.0, &mut rng, &mut capped, AppCost::new(2, 1))?;
    println!("p = 0 with budget 500: interrupted {}, spent {}", zero.interrupted, capped.oracle_experiments());
    Ok(())
}
