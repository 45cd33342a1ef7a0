use std::fmt::Write as _;

use super::sweep::{bern_upper, SweepRow};
use super::{EstimatorKind, GridPoint};
use crate::dist::{parse_named, FiniteDist};
use crate::error::{invalid, Result};
use crate::estimators::ConstantProfile;
use crate::stats::{mean, percentile};

/// Failure-rate reference for [`summarize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundMode {
    /// each estimator's own guarantee
    Auto,
    None,
}

/// What a row must satisfy to count as a success.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    /// `abs_error ≤ radius`
    Radius(f64),
    /// estimate within `[lo, hi]`
    Interval(f64, f64),
}

impl Bound {
    pub fn holds(&self, row: &SweepRow) -> bool {
        match *self {
            Bound::Radius(r) => row.abs_error <= r,
            Bound::Interval(lo, hi) => lo <= row.estimate && row.estimate <= hi,
        }
    }

    fn describe(&self) -> String {
        match *self {
            Bound::Radius(r) => format!("{r:.6e}"),
            Bound::Interval(lo, hi) => format!("[{lo}, {hi}]"),
        }
    }
}

/// The guarantee an estimator carries at a grid point, with natural logs:
/// `σ ln(1/δ)/n` (subgauss), `ε|μ|` (relative, seq-relative),
/// `√(b μ_{0,b}) ln(1/δ)/n + b ln(1/δ)²/n²` (bern), `[Q(p), Q(cp)]`
/// (quantile), `c_seq μ` (seq-bern) and `2√(σ² ln(1/δ)/n)` (median of means).
/// Empirical and truncated means carry no `δ` and get no bound.
pub fn guarantee_bound(kind: EstimatorKind, dist: &FiniteDist, point: &GridPoint, profile: &ConstantProfile) -> Result<Option<Bound>> {
    let m = dist.moments();
    let l = |d: Option<f64>| (1.0 / d.unwrap_or(f64::NAN)).ln();
    let n = point.n.unwrap_or(f64::NAN);
    let bound = match kind {
        EstimatorKind::Subgauss => Some(Bound::Radius(m.std_dev() * l(point.delta) / n)),
        EstimatorKind::Relative | EstimatorKind::SeqRelative => Some(Bound::Radius(point.epsilon.unwrap_or(f64::NAN) * m.mean.abs())),
        EstimatorKind::Bern => {
            let b = bern_upper(dist);
            let mu = if b == 0.0 { 0.0 } else { dist.truncated_mean(0.0, b)? };
            let ld = l(point.delta);
            Some(Bound::Radius((b * mu).sqrt() * ld / n + b * ld * ld / (n * n)))
        }
        EstimatorKind::Quantile => {
            let p = point.p.unwrap_or(f64::NAN);
            Some(Bound::Interval(dist.quantile(p)?, dist.quantile(profile.c * p)?))
        }
        EstimatorKind::SeqBern => Some(Bound::Radius(profile.c_seq * m.mean)),
        EstimatorKind::MedianOfMeans => Some(Bound::Radius(2.0 * (m.variance * l(point.delta) / n).sqrt())),
        EstimatorKind::Empirical | EstimatorKind::ClassicalTruncated => None,
    };
    Ok(bound)
}

/// Aggregate of all trials at one grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub estimator: EstimatorKind,
    pub distribution: String,
    pub point: GridPoint,
    pub trials: usize,
    pub mean_abs_error: f64,
    pub median_abs_error: f64,
    pub p90_abs_error: f64,
    pub max_abs_error: f64,
    pub bound: Option<Bound>,
    pub failure_rate: Option<f64>,
    pub mean_oracle_experiments: f64,
    pub mean_aa_applications: f64,
    pub interrupted_rate: f64,
}

/// Groups rows by `(estimator, distribution, grid point)` in order of first
/// appearance.
pub fn group_rows(rows: &[SweepRow]) -> Vec<Vec<&SweepRow>> {
    let mut groups: Vec<Vec<&SweepRow>> = Vec::new();
    for r in rows {
        match groups.iter_mut().find(|g| g[0].estimator == r.estimator && g[0].distribution == r.distribution && g[0].point() == r.point())
        {
            Some(g) => g.push(r),
            None => groups.push(vec![r]),
        }
    }
    groups
}

/// Per-grid-point aggregates. Bounds that need the distribution rebuild it
/// from the row's distribution string; `profile` supplies `c` and `c_seq`.
pub fn summarize(rows: &[SweepRow], mode: BoundMode, profile: &ConstantProfile) -> Result<Vec<Summary>> {
    if rows.is_empty() {
        return Err(invalid("nothing to summarize"));
    }
    let mut out = Vec::new();
    for g in group_rows(rows) {
        let first = g[0];
        let errs: Vec<f64> = g.iter().map(|r| r.abs_error).collect();
        let bound = match mode {
            BoundMode::None => None,
            BoundMode::Auto => guarantee_bound(first.estimator, &parse_named(&first.distribution)?, &first.point(), profile)?,
        };
        let failure_rate = bound.map(|b| g.iter().filter(|r| !b.holds(r)).count() as f64 / g.len() as f64);
        out.push(Summary {
            estimator: first.estimator,
            distribution: first.distribution.clone(),
            point: first.point(),
            trials: g.len(),
            mean_abs_error: mean(&errs),
            median_abs_error: percentile(&errs, 50.0),
            p90_abs_error: percentile(&errs, 90.0),
            max_abs_error: errs.iter().cloned().fold(0.0, f64::max),
            bound,
            failure_rate,
            mean_oracle_experiments: mean(&g.iter().map(|r| r.oracle_experiments as f64).collect::<Vec<_>>()),
            mean_aa_applications: mean(&g.iter().map(|r| r.aa_applications as f64).collect::<Vec<_>>()),
            interrupted_rate: g.iter().filter(|r| r.interrupted).count() as f64 / g.len() as f64,
        });
    }
    Ok(out)
}

pub fn summary_tsv(summaries: &[Summary]) -> String {
    let mut s = String::from(
        "estimator\tdistribution\tn\tepsilon\tdelta\tp\ttrials\tmean_abs_error\tmedian_abs_error\tp90_abs_error\tmax_abs_error\tbound\tfailure_rate\tmean_oracle_experiments\tmean_aa_applications\tinterrupted_rate\n",
    );
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    for r in summaries {
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.6e}\t{:.6e}\t{:.6e}\t{:.6e}\t{}\t{}\t{:.1}\t{:.1}\t{}",
            r.estimator,
            r.distribution,
            opt(r.point.n),
            opt(r.point.epsilon),
            opt(r.point.delta),
            opt(r.point.p),
            r.trials,
            r.mean_abs_error,
            r.median_abs_error,
            r.p90_abs_error,
            r.max_abs_error,
            r.bound.map(|b| b.describe()).unwrap_or_default(),
            opt(r.failure_rate),
            r.mean_oracle_experiments,
            r.mean_aa_applications,
            r.interrupted_rate,
        );
    }
    s
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(invalid(format!("slope fit needs at least 3 points, got {}", points.len())));
    }
    if let Some(&(x, y)) = points.iter().find(|&&(x, y)| !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(invalid(format!("slope fit needs positive coordinates, got ({x}, {y})")));
    }
    let n = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(invalid("slope fit needs at least two distinct x values"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XAxis {
    OracleExperiments,
    AaApplications,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YAxis {
    AbsError,
    RelError,
}

impl std::str::FromStr for XAxis {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle_experiments" => Ok(XAxis::OracleExperiments),
            "aa_applications" => Ok(XAxis::AaApplications),
            "n" => Ok(XAxis::N),
            other => Err(crate::Error::Config(format!("unknown x column `{other}`"))),
        }
    }
}

impl std::str::FromStr for YAxis {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abs_error" => Ok(YAxis::AbsError),
            "rel_error" => Ok(YAxis::RelError),
            other => Err(crate::Error::Config(format!("unknown y column `{other}`"))),
        }
    }
}

/// One `(mean x, y percentile)` point per grid point.
pub fn slope_points(rows: &[SweepRow], x: XAxis, y: YAxis, pct: f64) -> Vec<(f64, f64)> {
    group_rows(rows)
        .into_iter()
        .map(|g| {
            let xs: Vec<f64> = g
                .iter()
                .map(|r| match x {
                    XAxis::OracleExperiments => r.oracle_experiments as f64,
                    XAxis::AaApplications => r.aa_applications as f64,
                    XAxis::N => r.n.unwrap_or(f64::NAN),
                })
                .collect();
            let ys: Vec<f64> = g
                .iter()
                .map(|r| match y {
                    YAxis::AbsError => r.abs_error,
                    YAxis::RelError => r.rel_error,
                })
                .collect();
            (mean(&xs), percentile(&ys, pct))
        })
        .collect()
}

pub fn fit_rows(rows: &[SweepRow], x: XAxis, y: YAxis, pct: f64) -> Result<f64> {
    fit_loglog_slope(&slope_points(rows, x, y, pct))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(err: f64) -> SweepRow {
        SweepRow {
            estimator: EstimatorKind::Subgauss,
            distribution: "bernoulli:0.5".into(),
            n: Some(64.0),
            epsilon: None,
            delta: Some(0.1),
            p: None,
            trial: 0,
            estimate: 0.5 + err,
            true_mean: 0.5,
            abs_error: err,
            rel_error: err / 0.5,
            oracle_experiments: 10,
            aa_applications: 5,
            interrupted: false,
            seed: 1,
        }
    }

    #[test]
    fn failure_rates() {
        let p = ConstantProfile::calibrated();
        let s = summarize(&[row(0.0), row(0.0)], BoundMode::Auto, &p).unwrap();
        assert_eq!(s[0].failure_rate, Some(0.0));
        let b = Bound::Radius(1.0);
        let rows = [row(0.0), row(10.0)];
        let rate = rows.iter().filter(|r| !b.holds(r)).count() as f64 / 2.0;
        assert_eq!(rate, 0.5);
        let s = summarize(&rows, BoundMode::None, &p).unwrap();
        assert_eq!(s[0].failure_rate, None);
        assert_eq!(s[0].max_abs_error, 10.0);
        assert!(summarize(&[], BoundMode::Auto, &p).is_err());
        assert!(summary_tsv(&s).lines().count() == 2);
    }

    #[test]
    fn slopes() {
        let line = |e: f64| -> Vec<(f64, f64)> { [1.0, 10.0, 100.0, 1000.0].iter().map(|&c: &f64| (c, c.powf(e))).collect() };
        assert!((fit_loglog_slope(&line(-1.0)).unwrap() + 1.0).abs() < 1e-12);
        assert!((fit_loglog_slope(&line(-0.5)).unwrap() + 0.5).abs() < 1e-12);
        assert!(fit_loglog_slope(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_loglog_slope(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
    }
}
