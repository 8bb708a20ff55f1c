//! Wall-clock budgets for the search operations.
//!
//! Exceeding a budget is never an error and never silent: searches return an
//! explicit status so a timeout can only ever surface as "inconclusive".

use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn from_duration(d: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + d),
        }
    }

    pub fn from_secs(secs: f64) -> Self {
        Self::from_duration(Duration::from_secs_f64(secs))
    }

    pub fn exceeded(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() > d)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

/// How a search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// The search space was covered completely; absence of results is a proof.
    Complete,
    /// Stopped early because the requested solution cap was reached.
    SolutionCapReached,
    /// Stopped early because the time budget ran out; inconclusive.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome<T> {
    pub items: Vec<T>,
    pub status: SearchStatus,
}

impl<T> SearchOutcome<T> {
    pub fn complete(items: Vec<T>) -> Self {
        SearchOutcome {
            items,
            status: SearchStatus::Complete,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }

    /// A definitive emptiness certificate: no results and full coverage.
    pub fn certified_empty(&self) -> bool {
        self.items.is_empty() && self.is_complete()
    }
}
