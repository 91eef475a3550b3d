use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_elements`].
pub const MAX_ELEMENTS_ENV: &str = "HOMQUERY_MAX_ELEMENTS";
/// Environment variable overriding [`Limits::max_facts`].
pub const MAX_FACTS_ENV: &str = "HOMQUERY_MAX_FACTS";
/// Environment variable overriding [`Limits::max_functions`].
pub const MAX_FUNCTIONS_ENV: &str = "HOMQUERY_MAX_FUNCTIONS";

/// Size guardrails for constructions whose output grows exponentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest element count of a constructed instance.
    pub max_elements: u128,
    /// Largest total fact count of a constructed instance.
    pub max_facts: u128,
    /// Largest number of candidate functions (or candidate tuples) a brute-force
    /// enumeration may visit.
    pub max_functions: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 100_000,
            max_facts: 1_000_000,
            max_functions: 10_000_000,
        }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits {
            max_elements: u128::MAX,
            max_facts: u128::MAX,
            max_functions: u128::MAX,
        }
    }

    /// Defaults, overridden by any of the `HOMQUERY_MAX_*` variables that parse
    /// as unsigned integers.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        for (var, slot) in [
            (MAX_ELEMENTS_ENV, &mut limits.max_elements),
            (MAX_FACTS_ENV, &mut limits.max_facts),
            (MAX_FUNCTIONS_ENV, &mut limits.max_functions),
        ] {
            if let Ok(raw) = std::env::var(var) {
                *slot = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{var} must be an unsigned integer")))?;
            }
        }
        Ok(limits)
    }

    pub(crate) fn check_elements(&self, what: &'static str, requested: u128) -> Result<()> {
        check(what, requested, self.max_elements)
    }

    pub(crate) fn check_facts(&self, what: &'static str, requested: u128) -> Result<()> {
        check(what, requested, self.max_facts)
    }

    pub(crate) fn check_functions(&self, what: &'static str, requested: u128) -> Result<()> {
        check(what, requested, self.max_functions)
    }
}

fn check(what: &'static str, requested: u128, limit: u128) -> Result<()> {
    if requested > limit {
        Err(Error::SizeCap {
            what,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
