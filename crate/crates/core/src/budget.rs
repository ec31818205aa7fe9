//! A shared cap on work units, decremented atomically by any number of
//! workers.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

#[derive(Debug)]
pub struct WorkBudget {
    remaining: AtomicU64,
    limit: u64,
}

impl WorkBudget {
    pub fn new(limit: u64) -> Self {
        WorkBudget { remaining: AtomicU64::new(limit), limit }
    }

    pub fn unlimited() -> Self {
        WorkBudget::new(u64::MAX)
    }

    /// Takes `units` from the budget, or fails without taking anything.
    pub fn charge(&self, units: u64) -> Result<()> {
        self.remaining
            .fetch_update(Ordering::AcqRel, Ordering::Acquire, |r| r.checked_sub(units))
            .map(|_| ())
            .map_err(|remaining| Error::BudgetExceeded { needed: units, remaining })
    }

    pub fn remaining(&self) -> u64 {
        self.remaining.load(Ordering::Acquire)
    }

    pub fn spent(&self) -> u64 {
        self.limit - self.remaining()
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget::unlimited()
    }
}
