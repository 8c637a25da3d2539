//! Exhaustive reference solvers.
//!
//! Every oracle refuses work beyond its budget with [`Error::TooLarge`]
//! instead of returning a partial answer.
//!
//! [`Error::TooLarge`]: crate::Error::TooLarge

mod coloring;
mod cut;
mod search;
mod selection;

pub use coloring::{brute_mhe, brute_mhv};
pub use cut::{brute_gmc, brute_nmc, NmcCut};
pub(crate) use cut::next_combination;
pub use search::{cover_mhe, search_mhv};
pub use selection::{brute_crbds, brute_rmis};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Coloring;
use crate::par::Execution;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest number of candidates an oracle may enumerate.
    pub budget: u128,
    pub execution: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            budget: DEFAULT_BUDGET,
            execution: Execution::default(),
        }
    }
}

impl OracleConfig {
    pub fn with_budget(budget: u128) -> Self {
        OracleConfig {
            budget,
            ..Self::default()
        }
    }

    pub fn sequential(self) -> Self {
        OracleConfig {
            execution: Execution::Sequential,
            ..self
        }
    }

    pub(crate) fn check(&self, needed: u128) -> Result<()> {
        if needed > self.budget {
            return Err(Error::TooLarge {
                needed,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// An optimal value with a coloring attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub value: usize,
    pub witness: Coloring,
}

/// Size of a vertex cut, or `Infinite` when no allowed cut exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CutCost {
    Finite(usize),
    Infinite,
}

impl CutCost {
    /// Whether a cut of size at most `k` exists.
    pub fn within(self, k: usize) -> bool {
        matches!(self, CutCost::Finite(c) if c <= k)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            CutCost::Finite(c) => Some(c),
            CutCost::Infinite => None,
        }
    }
}

impl fmt::Display for CutCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutCost::Finite(c) => write!(f, "{c}"),
            CutCost::Infinite => f.write_str("inf"),
        }
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_cost_order() {
        assert!(CutCost::Finite(100) < CutCost::Infinite);
        assert!(CutCost::Finite(2).within(2));
        assert!(!CutCost::Infinite.within(usize::MAX));
        assert_eq!(CutCost::Infinite.to_string(), "inf");
    }

    #[test]
    fn budget_check() {
        let cfg = OracleConfig::with_budget(10);
        assert!(cfg.check(10).is_ok());
        assert_eq!(
            cfg.check(11),
            Err(Error::TooLarge {
                needed: 11,
                budget: 10
            })
        );
        assert_eq!(saturating_pow(3, 4), 81);
        assert_eq!(saturating_pow(10, 60), u128::MAX);
    }
}
