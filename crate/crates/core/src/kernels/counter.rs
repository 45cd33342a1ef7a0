use serde::{Deserialize, Serialize};

/// Tally of quantum experiments (oracle-level cost) and amplitude-amplification
/// applications (`U`, `U†`, `I - 2Π`), with an optional cap on the former.
///
/// Charges fill up to the budget and then latch `interrupted`; once latched,
/// every further charge is refused.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExperimentCounter {
    oracle_experiments: u64,
    aa_applications: u64,
    budget: Option<u64>,
    interrupted: bool,
}

/// The charge was cut short by the budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interrupted;

/// Immutable totals of a counter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterTotals {
    pub oracle_experiments: u64,
    pub aa_applications: u64,
    pub interrupted: bool,
}

impl ExperimentCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: u64) -> Self {
        Self { budget: Some(budget), ..Self::default() }
    }

    pub fn oracle_experiments(&self) -> u64 {
        self.oracle_experiments
    }

    pub fn aa_applications(&self) -> u64 {
        self.aa_applications
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn interrupted(&self) -> bool {
        self.interrupted
    }

    /// Oracle experiments left before the budget; `None` when unbounded.
    pub fn remaining(&self) -> Option<u64> {
        self.budget.map(|b| b.saturating_sub(self.oracle_experiments))
    }

    pub fn totals(&self) -> CounterTotals {
        CounterTotals { oracle_experiments: self.oracle_experiments, aa_applications: self.aa_applications, interrupted: self.interrupted }
    }

    /// Charges `oracle` experiments and `aa` applications as one step. If the
    /// step does not fit, the oracle tally is filled exactly to the budget, the
    /// step's applications count as started, and the counter latches.
    pub fn charge(&mut self, oracle: u64, aa: u64) -> Result<(), Interrupted> {
        if self.interrupted {
            return Err(Interrupted);
        }
        match self.remaining() {
            Some(left) if oracle > left => {
                self.oracle_experiments += left;
                self.aa_applications += aa;
                self.interrupted = true;
                Err(Interrupted)
            }
            _ => {
                self.oracle_experiments += oracle;
                self.aa_applications += aa;
                Ok(())
            }
        }
    }

    /// A fresh counter for a sub-computation whose budget is the tighter of
    /// `local` and what this counter has left.
    pub fn child(&self, local: Option<u64>) -> ExperimentCounter {
        let budget = match (local, self.remaining()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        ExperimentCounter { budget, interrupted: self.interrupted, ..Self::default() }
    }

    /// Adds a child's tallies. The parent latches only if the child's
    /// interruption exhausted the parent's own budget.
    pub fn absorb(&mut self, child: &ExperimentCounter) {
        self.oracle_experiments += child.oracle_experiments;
        self.aa_applications += child.aa_applications;
        if child.interrupted && self.remaining() == Some(0) {
            self.interrupted = true;
        }
    }
}
