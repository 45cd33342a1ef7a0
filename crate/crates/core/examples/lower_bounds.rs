//! Hard instance pairs and how many copies it takes to tell them apart.
//!
//! cargo run --example lower_bounds -- [m] [sigma]

use qmean::baselines::bound_report;
use qmean::dist::{hard_instance_statebased, hard_instance_subgaussian};

fn main() -> qmean::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: f64 = args.next().map_or(10.0, |s| s.parse().expect("m"));
    let sigma: f64 = args.next().map_or(1.0, |s| s.parse().expect("sigma"));

    let (p0, p1) = hard_instance_subgaussian(m, sigma)?;
    println!(
        "sub-Gaussian pair: means {:.5} / {:.5}, sd {:.5} / {:.5}",
        p0.mean(),
        p1.mean(),
        p0.moments().std_dev(),
        p1.moments().std_dev()
    );

    let (q0, q1, alpha) = hard_instance_statebased(m, sigma)?;
    println!("state-based pair: alpha {alpha:.6}, sd {:.5} / {:.5}", q0.moments().std_dev(), q1.moments().std_dev());
    println!("delta\tkl\tfidelity\thelstrom(T=1)\tT_lower");
    for delta in [0.2, 0.1, 0.01, 1e-4] {
        let r = bound_report(&q0, &q1, delta, 1)?;
        println!("{delta}\t{:.6}\t{:.6}\t{:.6}\t{:?}", r.kl, r.fidelity, r.helstrom_success, r.t_lower);
    }
    Ok(())
}
