//! Checks the closed-form amplitude-estimation law against a brute-force
//! statevector phase-estimation simulation.
//!
//! cargo run --release --example verify_ae -- [max_m]

use qmean::harness::verify_ae;

fn main() -> qmean::Result<()> {
    let max_m: usize = std::env::args().nth(1).map_or(32, |s| s.parse().expect("max_m"));
    let report = verify_ae(max_m)?;
    println!("M\tworst p\tTV");
    let mut ms: Vec<usize> = report.checks.iter().map(|c| c.m).collect();
    ms.dedup();
    for m in ms {
        let worst = report.checks.iter().filter(|c| c.m == m).max_by(|a, b| a.tv.total_cmp(&b.tv)).unwrap();
        println!("{m}\t{:.6}\t{:.3e}", worst.p, worst.tv);
    }
    println!("max TV {:.3e} ({})", report.max_tv, if report.passed() { "ok" } else { "FAILED" });
    Ok(())
}
