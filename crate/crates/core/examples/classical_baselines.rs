//! Classical estimators on a heavy-tailed input: error percentiles as the
//! sample count grows.
//!
//! cargo run --release --example classical_baselines

use qmean::baselines::{classical_truncated_mean, empirical_mean, median_of_means};
use qmean::dist::parse_named;
use qmean::stats::percentile;
use qmean::RandomSource;

fn main() -> qmean::Result<()> {
    let x = parse_named("pareto:2.5:1:512")?;
    let m = x.moments();
    let second = m.variance + m.mean * m.mean;
    let mut rng = RandomSource::new(5, 0);
    println!("n\tempirical_p90\tmom_p90\ttruncated_p90\tsigma*sqrt(ln10/n)");
    for n in [100usize, 1000, 10_000] {
        let (mut e, mut mom, mut tr) = (Vec::new(), Vec::new(), Vec::new());
        for _ in 0..500 {
            let s: Vec<f64> = (0..n).map(|_| x.sample(&mut rng)).collect();
            e.push((empirical_mean(&s)? - m.mean).abs());
            mom.push((median_of_means(&s, 0.1)? - m.mean).abs());
            tr.push((classical_truncated_mean(&s, second, n)? - m.mean).abs());
        }
        println!(
            "{n}\t{:.4e}\t{:.4e}\t{:.4e}\t{:.4e}",
            percentile(&e, 90.0),
            percentile(&mom, 90.0),
            percentile(&tr, 90.0),
            m.std_dev() * (10f64.ln() / n as f64).sqrt()
        );
    }
    Ok(())
}
