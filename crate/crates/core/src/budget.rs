//! Wall-clock budgets for the long verifications.

use std::time::{Duration, Instant};

use crate::error::Error;

#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { deadline: None }
    }

    pub fn from_duration(d: Duration) -> Budget {
        Budget { deadline: Some(Instant::now() + d) }
    }

    pub fn seconds(s: f64) -> Budget {
        Budget::from_duration(Duration::from_secs_f64(s.max(0.0)))
    }

    pub fn exhausted(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn remaining(&self) -> Option<Duration> {
        self.deadline.map(|d| d.saturating_duration_since(Instant::now()))
    }
}

/// Failure of a budgeted verification, carrying whatever was computed.
#[derive(Debug, thiserror::Error)]
pub enum VerifyError<T> {
    #[error(transparent)]
    Ring(#[from] Error),
    #[error("budget exhausted during {phase}")]
    BudgetExceeded { phase: &'static str, partial: Box<T> },
}

impl<T> VerifyError<T> {
    pub fn partial(&self) -> Option<&T> {
        match self {
            VerifyError::BudgetExceeded { partial, .. } => Some(partial),
            VerifyError::Ring(_) => None,
        }
    }
}

/// Returns `BudgetExceeded` with a snapshot of `partial` once the budget is spent.
pub(crate) fn checkpoint<T: Clone>(
    budget: &Budget,
    phase: &'static str,
    partial: &T,
) -> Result<(), VerifyError<T>> {
    if budget.exhausted() {
        Err(VerifyError::BudgetExceeded { phase, partial: Box::new(partial.clone()) })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_is_exhausted() {
        assert!(Budget::seconds(0.0).exhausted());
        assert!(!Budget::unlimited().exhausted());
        let e = checkpoint(&Budget::seconds(0.0), "setup", &7u32).unwrap_err();
        assert_eq!(e.partial(), Some(&7));
    }
}
