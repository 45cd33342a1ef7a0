use std::io::{Read, Write};

use rayon::prelude::*;

use super::{EstimatorKind, GridPoint, SweepConfig};
use crate::baselines::{classical_truncated_mean, empirical_mean, median_of_means};
use crate::dist::{parse_named, FiniteDist, RandomSource};
use crate::error::{invalid, Error, Result};
use crate::estimators::{bern_est, quantile_est, relative_est, seq_bern_est, seq_relative_est, subgauss_est, ConstantProfile};
use crate::kernels::{CounterTotals, ExperimentCounter, QVar};

/// One trial of one grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub estimator: EstimatorKind,
    pub distribution: String,
    pub n: Option<f64>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub p: Option<f64>,
    pub trial: u64,
    pub estimate: f64,
    /// what the estimator targets: `μ`, `Q(p)` for quantile, `μ_{0,b}` for bern
    pub true_mean: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub oracle_experiments: u64,
    pub aa_applications: u64,
    pub interrupted: bool,
    pub seed: u64,
}

pub const CSV_HEADER: [&str; 15] = [
    "estimator",
    "distribution",
    "n",
    "epsilon",
    "delta",
    "p",
    "trial",
    "estimate",
    "true_mean",
    "abs_error",
    "rel_error",
    "oracle_experiments",
    "aa_applications",
    "interrupted",
    "seed",
];

impl SweepRow {
    pub fn point(&self) -> GridPoint {
        GridPoint { n: self.n, epsilon: self.epsilon, delta: self.delta, p: self.p }
    }
}

/// A grid point whose parameters the estimator rejected.
#[derive(Clone, Debug, PartialEq)]
pub struct SkippedPoint {
    pub index: usize,
    pub point: GridPoint,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SkippedPoint>,
}

/// Upper end of the Bernoulli sweep's truncation range: the largest
/// non-negative support value.
pub fn bern_upper(dist: &FiniteDist) -> f64 {
    dist.max().max(0.0)
}

/// The quantity an estimator's row is scored against.
pub fn target(kind: EstimatorKind, dist: &FiniteDist, point: &GridPoint) -> Result<f64> {
    match kind {
        EstimatorKind::Quantile => dist.quantile(point.p.unwrap_or(f64::NAN)),
        EstimatorKind::Bern => {
            let b = bern_upper(dist);
            if b == 0.0 {
                Ok(0.0)
            } else {
                dist.truncated_mean(0.0, b)
            }
        }
        _ => Ok(dist.mean()),
    }
}

/// `|σ/μ|` of the distribution, or 1 when that is 0 or undefined.
pub fn default_ch(dist: &FiniteDist) -> f64 {
    let m = dist.moments();
    let ch = (m.std_dev() / m.mean).abs();
    if ch > 0.0 && ch.is_finite() {
        ch
    } else {
        1.0
    }
}

fn classical_samples(x: &QVar, n: f64, rng: &mut RandomSource) -> Result<Vec<f64>> {
    if !(n >= 1.0 && n.fract() == 0.0) {
        return Err(invalid(format!("classical estimators need a whole sample count, got n = {n}")));
    }
    Ok((0..n as u64).map(|_| x.dist.sample(rng)).collect())
}

struct Context<'a> {
    cfg: &'a SweepConfig,
    x: QVar,
    profile: ConstantProfile,
    ch: f64,
}

impl Context<'_> {
    fn trial(&self, point: &GridPoint, rng: &mut RandomSource) -> Result<(f64, CounterTotals)> {
        let x = &self.x;
        let profile = &self.profile;
        let mut counter = match self.cfg.budget {
            Some(b) => ExperimentCounter::with_budget(b),
            None => ExperimentCounter::new(),
        };
        let need = |v: Option<f64>| v.expect("grid point carries every parameter its estimator uses");
        let c = &mut counter;
        let report = match self.cfg.estimator {
            EstimatorKind::Subgauss => subgauss_est(x, need(point.n), need(point.delta), profile, rng, c)?,
            EstimatorKind::Relative => relative_est(x, self.ch, need(point.epsilon), need(point.delta), profile, rng, c)?,
            EstimatorKind::SeqRelative => seq_relative_est(x, need(point.epsilon), need(point.delta), profile, rng, c)?,
            EstimatorKind::Bern => {
                let b = bern_upper(&x.dist);
                bern_est(x, need(point.n), 0.0, b, need(point.delta), profile.log_base, rng, c)?
            }
            EstimatorKind::Quantile => quantile_est(x, need(point.p), need(point.delta), profile, rng, c)?,
            EstimatorKind::SeqBern => seq_bern_est(x, rng, c)?,
            EstimatorKind::MedianOfMeans => {
                let s = classical_samples(x, need(point.n), rng)?;
                return Ok((median_of_means(&s, need(point.delta))?, CounterTotals::default()));
            }
            EstimatorKind::Empirical => {
                let s = classical_samples(x, need(point.n), rng)?;
                return Ok((empirical_mean(&s)?, CounterTotals::default()));
            }
            EstimatorKind::ClassicalTruncated => {
                let s = classical_samples(x, need(point.n), rng)?;
                let m2 = x.dist.moments().second_moment;
                return Ok((classical_truncated_mean(&s, m2, s.len())?, CounterTotals::default()));
            }
        };
        Ok((report.estimate, report.totals))
    }
}

fn config_error(e: Error) -> Error {
    match e {
        Error::Config(_) => e,
        other => Error::Config(other.to_string()),
    }
}

/// Runs every `(grid point, trial)` pair in parallel. Trial `t` of grid point
/// `g` draws from stream `g · trials + t`, so output does not depend on the
/// thread count. Grid points whose parameters an estimator rejects are
/// dropped whole and listed in `skipped`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let dist = parse_named(&cfg.distribution).map_err(config_error)?;
    let profile = ConstantProfile::resolve(&cfg.profile).map_err(config_error)?;
    let ch = cfg.ch.unwrap_or_else(|| default_ch(&dist));
    let ctx = Context { cfg, x: QVar::new(dist), profile, ch };
    let points = cfg.grid_points();
    let trials = cfg.trials;

    let results: Vec<Result<(f64, CounterTotals)>> = (0..points.len() as u64 * trials)
        .into_par_iter()
        .map(|i| {
            let point = &points[(i / trials) as usize];
            let mut rng = RandomSource::new(cfg.seed, i);
            ctx.trial(point, &mut rng)
        })
        .collect();

    let mut out = SweepOutput::default();
    for (g, point) in points.iter().enumerate() {
        let chunk = &results[g * trials as usize..(g + 1) * trials as usize];
        let truth = target(cfg.estimator, &ctx.x.dist, point);
        let failure =
            chunk.iter().find_map(|r| r.as_ref().err()).map(|e| e.to_string()).or_else(|| truth.as_ref().err().map(|e| e.to_string()));
        if let Some(reason) = failure {
            out.skipped.push(SkippedPoint { index: g, point: *point, reason });
            continue;
        }
        let truth = truth.expect("checked above");
        for (t, r) in chunk.iter().enumerate() {
            let (estimate, totals) = *r.as_ref().expect("checked above");
            let abs_error = (estimate - truth).abs();
            out.rows.push(SweepRow {
                estimator: cfg.estimator,
                distribution: cfg.distribution.clone(),
                n: point.n,
                epsilon: point.epsilon,
                delta: point.delta,
                p: point.p,
                trial: t as u64,
                estimate,
                true_mean: truth,
                abs_error,
                rel_error: if abs_error == 0.0 { 0.0 } else { abs_error / truth.abs() },
                oracle_experiments: totals.oracle_experiments,
                aa_applications: totals.aa_applications,
                interrupted: totals.interrupted,
                seed: cfg.seed,
            });
        }
    }
    Ok(out)
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

pub fn write_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.estimator.name().to_string(),
            r.distribution.clone(),
            opt(r.n),
            opt(r.epsilon),
            opt(r.delta),
            opt(r.p),
            r.trial.to_string(),
            format_float(r.estimate),
            format_float(r.true_mean),
            format_float(r.abs_error),
            format_float(r.rel_error),
            r.oracle_experiments.to_string(),
            r.aa_applications.to_string(),
            r.interrupted.to_string(),
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    let mut rows = Vec::new();
    for (line, rec) in rd.records().enumerate() {
        let rec = rec?;
        let bad = |field: &str| {
            Error::Config(format!(
                "row {}: bad {field} `{}`",
                line + 1,
                rec.get(CSV_HEADER.iter().position(|h| *h == field).unwrap()).unwrap_or("")
            ))
        };
        let float = |i: usize| rec[i].parse::<f64>().map_err(|_| bad(CSV_HEADER[i]));
        let maybe = |i: usize| if rec[i].is_empty() { Ok(None) } else { float(i).map(Some) };
        let int = |i: usize| rec[i].parse::<u64>().map_err(|_| bad(CSV_HEADER[i]));
        rows.push(SweepRow {
            estimator: rec[0].parse()?,
            distribution: rec[1].to_string(),
            n: maybe(2)?,
            epsilon: maybe(3)?,
            delta: maybe(4)?,
            p: maybe(5)?,
            trial: int(6)?,
            estimate: float(7)?,
            true_mean: float(8)?,
            abs_error: float(9)?,
            rel_error: float(10)?,
            oracle_experiments: int(11)?,
            aa_applications: int(12)?,
            interrupted: rec[13].parse().map_err(|_| bad("interrupted"))?,
            seed: int(14)?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> SweepConfig {
        SweepConfig::from_json(text).unwrap()
    }

    #[test]
    fn point_mass_rows_are_exact() {
        let c = cfg(r#"{"estimator": "subgauss", "distribution": "point:5", "grid": {"n": [32], "delta": [0.1]}, "trials": 3, "seed": 1}"#);
        let out = run_sweep(&c).unwrap();
        assert_eq!(out.rows.len(), 3);
        assert!(out.rows.iter().all(|r| r.abs_error == 0.0 && r.estimate == 5.0));
        assert!(out.skipped.is_empty());
    }

    #[test]
    fn csv_round_trip_and_determinism() {
        let c = cfg(
            r#"{"estimator": "quantile", "distribution": "uniform:1..100:100", "grid": {"p": [0.5, 0.01], "delta": [0.1]}, "trials": 4, "seed": 9}"#,
        );
        let a = run_sweep(&c).unwrap();
        let b = run_sweep(&c).unwrap();
        let (mut x, mut y) = (Vec::new(), Vec::new());
        write_csv(&mut x, &a.rows).unwrap();
        write_csv(&mut y, &b.rows).unwrap();
        assert_eq!(x, y);
        assert_eq!(read_csv(&x[..]).unwrap(), a.rows);
        let text = String::from_utf8(x).unwrap();
        assert!(text.starts_with("estimator,distribution,n,epsilon,delta,p,trial,"));
        assert!(text.contains("quantile,uniform:1..100:100,,,1.0000000000000001e-1,5.0000000000000000e-1,0,"));
    }

    #[test]
    fn on_grid_bern_rows() {
        // M = ⌈2π · 11.5 / ln 10⌉ = 32 puts amplitude 1/2 on the grid
        let c = cfg(
            r#"{"estimator": "bern", "distribution": "bernoulli:0.5", "grid": {"n": [11.5], "delta": [0.1]}, "trials": 20, "seed": 3}"#,
        );
        let out = run_sweep(&c).unwrap();
        assert!(out.rows.iter().all(|r| (r.estimate - 0.5).abs() < 1e-15), "{:?}", out.rows.iter().map(|r| r.estimate).collect::<Vec<_>>());
    }

    #[test]
    fn bad_points_are_skipped_and_reported() {
        let c =
            cfg(r#"{"estimator": "subgauss", "distribution": "point:5", "grid": {"n": [1, 32], "delta": [0.1]}, "trials": 2, "seed": 1}"#);
        let out = run_sweep(&c).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert_eq!(out.skipped.len(), 1);
        assert_eq!(out.skipped[0].index, 0);
        let c =
            cfg(r#"{"estimator": "subgauss", "distribution": "nosuch:1", "grid": {"n": [32], "delta": [0.1]}, "trials": 2, "seed": 1}"#);
        assert!(matches!(run_sweep(&c), Err(Error::Config(_))));
    }

    #[test]
    fn classical_rows_cost_nothing_quantum() {
        let c = cfg(
            r#"{"estimator": "median-of-means", "distribution": "bernoulli:0.3", "grid": {"n": [100], "delta": [0.1]}, "trials": 5, "seed": 1}"#,
        );
        let out = run_sweep(&c).unwrap();
        assert_eq!(out.rows.len(), 5);
        assert!(out.rows.iter().all(|r| r.oracle_experiments == 0 && r.aa_applications == 0));
    }
}
