use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorKind {
    Subgauss,
    Relative,
    SeqRelative,
    Bern,
    Quantile,
    SeqBern,
    MedianOfMeans,
    Empirical,
    ClassicalTruncated,
}

pub const ALL_ESTIMATORS: [EstimatorKind; 9] = [
    EstimatorKind::Subgauss,
    EstimatorKind::Relative,
    EstimatorKind::SeqRelative,
    EstimatorKind::Bern,
    EstimatorKind::Quantile,
    EstimatorKind::SeqBern,
    EstimatorKind::MedianOfMeans,
    EstimatorKind::Empirical,
    EstimatorKind::ClassicalTruncated,
];

/// Which grid lists an estimator reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Uses {
    pub n: bool,
    pub epsilon: bool,
    pub delta: bool,
    pub p: bool,
}

impl EstimatorKind {
    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::Subgauss => "subgauss",
            EstimatorKind::Relative => "relative",
            EstimatorKind::SeqRelative => "seq-relative",
            EstimatorKind::Bern => "bern",
            EstimatorKind::Quantile => "quantile",
            EstimatorKind::SeqBern => "seq-bern",
            EstimatorKind::MedianOfMeans => "median-of-means",
            EstimatorKind::Empirical => "empirical",
            EstimatorKind::ClassicalTruncated => "classical-truncated",
        }
    }

    pub fn uses(self) -> Uses {
        let (n, epsilon, delta, p) = match self {
            EstimatorKind::Subgauss | EstimatorKind::Bern | EstimatorKind::MedianOfMeans => (true, false, true, false),
            EstimatorKind::Relative | EstimatorKind::SeqRelative => (false, true, true, false),
            EstimatorKind::Quantile => (false, false, true, true),
            EstimatorKind::SeqBern => (false, false, false, false),
            EstimatorKind::Empirical | EstimatorKind::ClassicalTruncated => (true, false, false, false),
        };
        Uses { n, epsilon, delta, p }
    }

    /// Runs on classical samples rather than quantum experiments.
    pub fn is_classical(self) -> bool {
        matches!(self, EstimatorKind::MedianOfMeans | EstimatorKind::Empirical | EstimatorKind::ClassicalTruncated)
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_ESTIMATORS.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::UnknownEstimator(s.to_string()))
    }
}

/// Parameter lists; the sweep runs their Cartesian product over the lists
/// the estimator uses. Lists it does not use are ignored.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default)]
    pub n: Vec<f64>,
    #[serde(default)]
    pub epsilon: Vec<f64>,
    #[serde(default)]
    pub delta: Vec<f64>,
    #[serde(default)]
    pub p: Vec<f64>,
}

fn default_profile() -> String {
    "calibrated".to_string()
}

/// One sweep, read from a single JSON document. Unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub estimator: EstimatorKind,
    /// named generator (`pareto:2.5:1:512`, ...) or JSON distribution file
    pub distribution: String,
    pub grid: Grid,
    pub trials: u64,
    pub seed: u64,
    /// `theoretical`, `calibrated` or a profile file
    #[serde(default = "default_profile")]
    pub profile: String,
    /// per-trial cap on oracle experiments
    #[serde(default)]
    pub budget: Option<u64>,
    /// bound on `|σ/μ|` for `relative`; defaults to the distribution's own
    #[serde(default)]
    pub ch: Option<f64>,
}

/// One point of the parameter grid. Unused parameters are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GridPoint {
    pub n: Option<f64>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub p: Option<f64>,
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, v) in [("n", self.n), ("epsilon", self.epsilon), ("delta", self.delta), ("p", self.p)] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        if parts.is_empty() {
            f.write_str("(no parameters)")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        let uses = self.estimator.uses();
        for (used, list, name) in [
            (uses.n, &self.grid.n, "n"),
            (uses.epsilon, &self.grid.epsilon, "epsilon"),
            (uses.delta, &self.grid.delta, "delta"),
            (uses.p, &self.grid.p, "p"),
        ] {
            if used && list.is_empty() {
                return Err(Error::Config(format!("estimator {} needs a non-empty grid.{name}", self.estimator)));
            }
            if let Some(v) = list.iter().find(|v| !v.is_finite()) {
                return Err(Error::Config(format!("grid.{name} contains {v}")));
            }
        }
        if let Some(ch) = self.ch {
            if !(ch > 0.0 && ch.is_finite()) {
                return Err(Error::Config(format!("ch = {ch} must be positive")));
            }
        }
        Ok(())
    }

    /// Grid points in canonical order: `n`, then `epsilon`, `delta`, `p`,
    /// last index fastest.
    pub fn grid_points(&self) -> Vec<GridPoint> {
        let uses = self.estimator.uses();
        let axis = |used: bool, list: &[f64]| -> Vec<Option<f64>> {
            if used {
                list.iter().map(|&v| Some(v)).collect()
            } else {
                vec![None]
            }
        };
        let mut points = Vec::new();
        for &n in &axis(uses.n, &self.grid.n) {
            for &epsilon in &axis(uses.epsilon, &self.grid.epsilon) {
                for &delta in &axis(uses.delta, &self.grid.delta) {
                    for &p in &axis(uses.p, &self.grid.p) {
                        points.push(GridPoint { n, epsilon, delta, p });
                    }
                }
            }
        }
        points
    }
}
