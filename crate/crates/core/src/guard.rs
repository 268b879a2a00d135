use crate::{Error, Result};

/// Environment variable overriding [`Guard::DEFAULT_OPS`].
pub const GUARD_ENV: &str = "SYMDET_GUARD_OPS";

/// Thresholds on predicted enumeration work.
///
/// `max_ops` bounds pair operations (matrix pairs scanned by the full
/// weight oracle), `max_enum` bounds the number of matrices materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    pub max_ops: u128,
    pub max_enum: u128,
    pub force: bool,
}

impl Guard {
    pub const DEFAULT_OPS: u128 = 1_000_000_000;
    pub const DEFAULT_ENUM: u128 = 100_000_000;

    /// A guard that never fires.
    pub fn unlimited() -> Self {
        Guard { force: true, ..Guard::default() }
    }

    /// Default thresholds, with `max_ops` taken from `SYMDET_GUARD_OPS` when set.
    pub fn from_env() -> Result<Self> {
        let mut g = Guard::default();
        if let Ok(v) = std::env::var(GUARD_ENV) {
            g.max_ops = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{GUARD_ENV}={v:?} is not an integer")))?;
        }
        Ok(g)
    }

    pub fn check_ops(&self, predicted: u128) -> Result<()> {
        Self::check(predicted, self.max_ops, self.force)
    }

    pub fn check_enum(&self, predicted: u128) -> Result<()> {
        Self::check(predicted, self.max_enum, self.force)
    }

    fn check(predicted: u128, limit: u128, force: bool) -> Result<()> {
        if force || predicted <= limit {
            Ok(())
        } else {
            Err(Error::GuardExceeded { predicted, limit })
        }
    }
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_ops: Self::DEFAULT_OPS,
            max_enum: Self::DEFAULT_ENUM,
            force: false,
        }
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
