//! Size guard for tensor-power blowup.

use std::env;

/// Default cap on the total number of basis elements in one complex.
pub const DEFAULT_BUDGET: usize = 5_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "HOCHHOM_BUDGET";

/// Upper bound on basis elements a single complex may allocate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub usize);

impl Budget {
    /// Reads [`BUDGET_ENV`], falling back to the default when unset or
    /// unparsable.
    pub fn from_env() -> Self {
        Budget::env_override().unwrap_or(Budget(DEFAULT_BUDGET))
    }

    /// The budget from the environment, if set to a positive integer.
    pub fn env_override() -> Option<Self> {
        env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|b| *b > 0)
            .map(Budget)
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

/// `base^exp`, or `None` on `usize` overflow.
pub fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
