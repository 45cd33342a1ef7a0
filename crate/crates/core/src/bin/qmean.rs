//! Thin command-line front end over `qmean::harness`.
//!
//! Exit codes: 0 ok, 1 config error, 2 validation failure.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qmean::baselines::{bound_report, CopyBound};
use qmean::dist::{hard_instance_statebased, hard_instance_subgaussian};
use qmean::estimators::{calibrate_constants, ConstantProfile, DEFAULT_GRID};
use qmean::harness::{fit_rows, read_csv, run_sweep, summarize, summary_tsv, verify_ae, write_csv, BoundMode, SweepConfig, XAxis, YAxis};
use qmean::Error;

#[derive(Parser)]
#[command(name = "qmean", version, about = "Quantum mean-estimation simulator and sweep harness")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundArg {
    Auto,
    None,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a JSON sweep config and write CSV rows
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Aggregate a sweep CSV per grid point (TSV on stdout)
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        bound: BoundArg,
        /// theoretical | calibrated | profile JSON path
        #[arg(long, default_value = "calibrated")]
        profile: String,
    },
    /// Fit a log-log slope of an error percentile against cost
    Slope {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "oracle_experiments")]
        x: String,
        #[arg(long, default_value = "abs_error")]
        y: String,
        #[arg(long, default_value_t = 90.0)]
        percentile: f64,
    },
    /// Measure sequential-amplification constants and write a profile
    Calibrate {
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the closed-form AE law with a statevector simulation
    VerifyAe {
        #[arg(long, default_value_t = 32)]
        max_m: usize,
    },
    /// Distinguishability numbers for a hard instance pair
    Bounds {
        /// hard-statebased:m:sigma or hard-subgaussian:m:sigma
        #[arg(long)]
        instance: String,
        #[arg(long)]
        delta: f64,
        /// copies for the Helstrom success probability
        #[arg(long, default_value_t = 1)]
        copies: u64,
    },
}

enum Failure {
    Config(String),
    Validation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("validation failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Sweep { config, out } => {
            let cfg = SweepConfig::load(&config)?;
            let result = run_sweep(&cfg)?;
            let mut w = BufWriter::new(File::create(&out).map_err(Error::from)?);
            write_csv(&mut w, &result.rows)?;
            w.flush().map_err(Error::from)?;
            for s in &result.skipped {
                eprintln!("skipped grid point {} ({}): {}", s.index, s.point, s.reason);
            }
            eprintln!("{} rows written to {}", result.rows.len(), out.display());
        }
        Cmd::Summarize { input, bound, profile } => {
            let rows = read_csv(BufReader::new(File::open(&input).map_err(Error::from)?))?;
            let profile = ConstantProfile::resolve(&profile)?;
            let mode = match bound {
                BoundArg::Auto => BoundMode::Auto,
                BoundArg::None => BoundMode::None,
            };
            print!("{}", summary_tsv(&summarize(&rows, mode, &profile)?));
        }
        Cmd::Slope { input, x, y, percentile } => {
            let x: XAxis = x.parse()?;
            let y: YAxis = y.parse()?;
            let rows = read_csv(BufReader::new(File::open(&input).map_err(Error::from)?))?;
            println!("{:.6}", fit_rows(&rows, x, y, percentile)?);
        }
        Cmd::Calibrate { trials, seed, out } => {
            let profile = calibrate_constants(&DEFAULT_GRID, trials, seed)?;
            profile.save(&out)?;
            println!("{}", profile.to_json());
        }
        Cmd::VerifyAe { max_m } => {
            let report = verify_ae(max_m)?;
            println!("max_tv\t{:e}", report.max_tv);
            if !report.passed() {
                return Err(Failure::Validation(format!("max TV {:e} exceeds {:e}", report.max_tv, qmean::harness::VERIFY_TOLERANCE)));
            }
        }
        Cmd::Bounds { instance, delta, copies } => {
            let (kind, m, sigma) = parse_instance(&instance)?;
            let (p0, p1) = match kind {
                "hard-statebased" => {
                    let (p0, p1, alpha) = hard_instance_statebased(m, sigma)?;
                    println!("alpha\t{alpha}");
                    (p0, p1)
                }
                _ => hard_instance_subgaussian(m, sigma)?,
            };
            let r = bound_report(&p0, &p1, delta, copies)?;
            println!("kl\t{}", r.kl);
            println!("fidelity\t{}", r.fidelity);
            println!("helstrom_success\t{}", r.helstrom_success);
            println!("copies\t{}", r.copies);
            match r.t_lower {
                CopyBound::Finite(t) => println!("t_lower\t{t}"),
                CopyBound::Infinite => println!("t_lower\tinfinite"),
            }
        }
    }
    Ok(())
}

fn parse_instance(s: &str) -> Result<(&str, f64, f64), Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Failure::Config(format!("instance must be hard-statebased:m:sigma or hard-subgaussian:m:sigma, got `{s}`"));
    match parts.as_slice() {
        [kind @ ("hard-statebased" | "hard-subgaussian"), m, sigma] => {
            Ok((kind, m.parse().map_err(|_| bad())?, sigma.parse().map_err(|_| bad())?))
        }
        _ => Err(bad()),
    }
}
