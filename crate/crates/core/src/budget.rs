use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits shared by the engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Monomial rewriting steps allowed per Buchberger run.
    pub reduction_steps: u64,
    /// Largest fiber (or monomial enumeration) that may be materialized.
    pub fiber_size: usize,
    /// Largest number of cones a fan traversal may visit.
    pub cones: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            reduction_steps: 10_000_000,
            fiber_size: 1_000_000,
            cones: 10_000,
        }
    }
}

impl Budget {
    pub fn validate(&self) -> Result<()> {
        if self.reduction_steps == 0 || self.fiber_size == 0 || self.cones == 0 {
            return Err(Error::invalid("budgets must be positive"));
        }
        Ok(())
    }
}

/// Running counter against a step limit.
#[derive(Debug)]
pub(crate) struct StepCounter {
    used: u64,
    limit: u64,
}

impl StepCounter {
    pub(crate) fn new(limit: u64) -> Self {
        StepCounter { used: 0, limit }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::Budget {
                what: "reduction step",
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}
