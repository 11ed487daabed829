use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Enumeration limits for the exponential parts of the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximal number of obligation configurations handled by the search.
    pub max_obligations: u64,
    /// Maximal priority handled by the search.
    pub max_priority: u64,
    /// Maximal number of strategy (pairs) an enumeration may visit.
    pub max_strategy_pairs: u64,
    /// Maximal number of γ-game solves during the dependency search.
    pub max_gamma_solves: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_obligations: 10,
            max_priority: 4,
            max_strategy_pairs: 2_000_000,
            max_gamma_solves: 200_000,
        }
    }
}

impl Budget {
    /// No limits at all; only for tests on tiny inputs.
    pub fn unlimited() -> Self {
        Budget {
            max_obligations: u64::MAX,
            max_priority: u64::MAX,
            max_strategy_pairs: u64::MAX,
            max_gamma_solves: u64::MAX,
        }
    }

    pub(crate) fn check(what: &'static str, needed: u64, limit: u64) -> Result<(), Error> {
        if needed > limit {
            Err(Error::Budget {
                what,
                limit,
                needed,
            })
        } else {
            Ok(())
        }
    }
}

/// Counter charged against one budget limit.
#[derive(Debug)]
pub(crate) struct Meter {
    what: &'static str,
    used: u64,
    limit: u64,
}

impl Meter {
    pub(crate) fn new(what: &'static str, limit: u64) -> Self {
        Meter {
            what,
            used: 0,
            limit,
        }
    }

    pub(crate) fn charge(&mut self, amount: u64) -> Result<(), Error> {
        self.used = self.used.saturating_add(amount);
        Budget::check(self.what, self.used, self.limit)
    }
}
