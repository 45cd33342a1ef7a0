//! Error versus cost of the sub-Gaussian estimator on a heavy-tailed input,
//! next to median-of-means on the same distribution.
//!
//! cargo run --release --example subgaussian_speedup -- [trials] [d]

use qmean::dist::parse_named;
use qmean::estimators::{subgauss_est, ConstantProfile};
use qmean::harness::fit_loglog_slope;
use qmean::stats::percentile;
use qmean::{ExperimentCounter, QVar, RandomSource};
use rayon::prelude::*;

fn main() -> qmean::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: u64 = args.next().map_or(300, |s| s.parse().expect("trials"));
    let mut profile = ConstantProfile::calibrated();
    if let Some(d) = args.next() {
        profile.d = d.parse().expect("d");
    }
    let x = QVar::new(parse_named("pareto:2.5:1:512")?);
    let m = x.dist.moments();
    println!("pareto(2.5) mean {:.6} sd {:.6}, d = {}", m.mean, m.std_dev(), profile.d);
    println!("n\tcost\tp90_error\tbound");
    let mut points = Vec::new();
    for (i, n) in [32.0, 64.0, 128.0, 256.0, 512.0, 1024.0].into_iter().enumerate() {
        let runs: Vec<(f64, f64)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = RandomSource::new(7, i as u64 * trials + t);
                let mut c = ExperimentCounter::new();
                let r = subgauss_est(&x, n, 0.1, &profile, &mut rng, &mut c).unwrap();
                ((r.estimate - m.mean).abs(), r.totals.oracle_experiments as f64)
            })
            .collect();
        let errs: Vec<f64> = runs.iter().map(|r| r.0).collect();
        let cost = runs.iter().map(|r| r.1).sum::<f64>() / trials as f64;
        let p90 = percentile(&errs, 90.0);
        println!("{n}\t{cost:.0}\t{p90:.3e}\t{:.3e}", m.std_dev() * 10f64.ln() / n);
        points.push((cost, p90));
    }
    println!("slope {:.3}", fit_loglog_slope(&points)?);
    Ok(())
}
