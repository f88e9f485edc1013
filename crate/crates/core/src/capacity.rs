//! Size guards for dense (2^n) computations.
//!
//! `ANDLIFT_CAPACITY`, when set to an integer, replaces both limits.

use crate::error::{Error, Result};

/// Default limit for dense truth tables.
pub const DEFAULT_TABLE_LIMIT: usize = 24;
/// Default limit for computations that enumerate every input and do
/// non-trivial work per input.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

pub const ENV_VAR: &str = "ANDLIFT_CAPACITY";

fn override_limit() -> Option<usize> {
    std::env::var(ENV_VAR).ok()?.trim().parse().ok()
}

pub fn table_limit() -> usize {
    override_limit().unwrap_or(DEFAULT_TABLE_LIMIT)
}

pub fn enumeration_limit() -> usize {
    override_limit().unwrap_or(DEFAULT_ENUMERATION_LIMIT)
}

pub fn check_table(what: &'static str, n: usize) -> Result<()> {
    check(what, n, table_limit())
}

pub fn check_enumeration(what: &'static str, n: usize) -> Result<()> {
    check(what, n, enumeration_limit())
}

/// Like [`check`] with a module-specific default that the environment
/// variable also replaces.
pub fn check_or_override(what: &'static str, n: usize, default: usize) -> Result<()> {
    check(what, n, override_limit().unwrap_or(default))
}

pub fn check(what: &'static str, n: usize, limit: usize) -> Result<()> {
    // usize indexing into 2^n entries is never possible past 63
    let limit = limit.min(63);
    if n > limit {
        Err(Error::Capacity { what, n, limit })
    } else {
        Ok(())
    }
}
