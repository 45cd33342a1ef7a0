//! Measures the sequential-amplification constants and prints the profile.
//!
//! cargo run --release --example calibrate -- [trials] [seed]

use qmean::estimators::{calibrate_constants, calibration_stats, ProfileMode, DEFAULT_GRID};

fn main() -> qmean::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().map_or(100_000, |s| s.parse().expect("trials"));
    let seed: u64 = args.next().map_or(2024, |s| s.parse().expect("seed"));

    println!("p\tsqrt(p)E[T]\tsqrt(p)P10[T]\tpE[T^2]\tE[1/T]/sqrt(p)\trel_err_7/8");
    for s in calibration_stats(&DEFAULT_GRID, trials, seed)? {
        println!(
            "{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
            s.p, s.sampler_mean, s.sampler_p10, s.second_moment, s.inverse_moment, s.relative_error
        );
    }
    let profile = calibrate_constants(&DEFAULT_GRID, trials, seed)?;
    println!("{}", profile.to_json());
    let theory = qmean::estimators::ConstantProfile::from_base(profile.base(), ProfileMode::Theoretical, profile.log_base)?;
    println!("theoretical d = {:.1}", theory.d);
    Ok(())
}
