//! Enumeration guardrails.

use crate::error::{Error, Result};

/// Environment variable overriding the evaluation-count budgets.
pub const BUDGET_ENV: &str = "CONTACTLOCI_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest number of hyperplanes for which an intersection poset is built.
    pub max_hyperplanes: usize,
    /// Largest contact order accepted by the enumeration.
    pub max_order: u32,
    /// Largest number of chain descriptors returned for one order.
    pub max_descriptors: usize,
    /// Largest jet space size `p^{n(m+1)}` the finite-field counter will scan.
    pub max_evaluations: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_hyperplanes: 20,
            max_order: 64,
            max_descriptors: 1_000_000,
            max_evaluations: 100_000_000,
        }
    }
}

impl Budget {
    /// Default budget with `CONTACTLOCI_BUDGET` applied, if set.
    ///
    /// The variable replaces both the descriptor cap and the jet evaluation
    /// cap; it must be a positive integer.
    pub fn from_env() -> Result<Self> {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            let value: u128 = raw.trim().parse().map_err(|_| {
                Error::Input(format!("{BUDGET_ENV} must be a positive integer, got {raw:?}"))
            })?;
            if value == 0 {
                return Err(Error::Input(format!("{BUDGET_ENV} must be positive")));
            }
            budget.max_evaluations = value;
            budget.max_descriptors = usize::try_from(value).unwrap_or(usize::MAX);
        }
        Ok(budget)
    }
}
