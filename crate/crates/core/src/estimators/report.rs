use serde::Serialize;

use crate::kernels::{CounterTotals, ExperimentCounter};

/// Oracle experiments spent in one named stage of an estimator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageCost {
    pub stage: String,
    pub oracle_experiments: u64,
}

/// An estimate together with what it cost.
///
/// `totals` covers only the work done by this call, so `stage_costs` always
/// sums to `totals.oracle_experiments`. `totals.interrupted` reflects the
/// caller's counter (a global budget ran out); `interrupted_stages` lists
/// stages whose private budgets were hit, which for quantile estimation is
/// the normal way a repetition ends.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateReport {
    pub estimate: f64,
    pub totals: CounterTotals,
    pub stage_costs: Vec<StageCost>,
    pub interrupted_stages: Vec<String>,
}

impl EstimateReport {
    pub fn stage_cost(&self, stage: &str) -> Option<u64> {
        self.stage_costs.iter().find(|s| s.stage == stage).map(|s| s.oracle_experiments)
    }

    pub fn stage_total(&self) -> u64 {
        self.stage_costs.iter().map(|s| s.oracle_experiments).sum()
    }
}

/// Splits the growth of a counter into named stages.
pub(crate) struct StageRecorder {
    start: CounterTotals,
    last: u64,
    stages: Vec<StageCost>,
    interrupted: Vec<String>,
}

impl StageRecorder {
    pub fn new(counter: &ExperimentCounter) -> Self {
        let start = counter.totals();
        Self { start, last: start.oracle_experiments, stages: Vec::new(), interrupted: Vec::new() }
    }

    /// Attributes everything charged since the previous mark to `stage`.
    /// Repeated names accumulate.
    pub fn mark(&mut self, stage: &str, counter: &ExperimentCounter) {
        let now = counter.oracle_experiments();
        let spent = now - self.last;
        self.last = now;
        match self.stages.iter_mut().find(|s| s.stage == stage) {
            Some(s) => s.oracle_experiments += spent,
            None => self.stages.push(StageCost { stage: stage.to_string(), oracle_experiments: spent }),
        }
    }

    pub fn interrupted(&mut self, stage: &str) {
        if !self.interrupted.iter().any(|s| s == stage) {
            self.interrupted.push(stage.to_string());
        }
    }

    /// Folds a nested report's stages in under `prefix`.
    pub fn nest(&mut self, prefix: &str, inner: &EstimateReport, counter: &ExperimentCounter) {
        for s in &inner.stage_costs {
            let name = format!("{prefix}.{}", s.stage);
            match self.stages.iter_mut().find(|t| t.stage == name) {
                Some(t) => t.oracle_experiments += s.oracle_experiments,
                None => self.stages.push(StageCost { stage: name, oracle_experiments: s.oracle_experiments }),
            }
        }
        for s in &inner.interrupted_stages {
            self.interrupted(&format!("{prefix}.{s}"));
        }
        self.last = counter.oracle_experiments();
    }

    pub fn finish(self, estimate: f64, counter: &ExperimentCounter) -> EstimateReport {
        let now = counter.totals();
        debug_assert_eq!(now.oracle_experiments, self.last, "unattributed charges");
        EstimateReport {
            estimate,
            totals: CounterTotals {
                oracle_experiments: now.oracle_experiments - self.start.oracle_experiments,
                aa_applications: now.aa_applications - self.start.aa_applications,
                interrupted: now.interrupted,
            },
            stage_costs: self.stages,
            interrupted_stages: self.interrupted,
        }
    }
}
