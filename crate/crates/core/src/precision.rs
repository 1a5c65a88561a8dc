//! Precision bookkeeping for series that are known only up to a cut.
//!
//! A [`Precision`] gives, for each variable level, how many terms past the
//! leading one are materialized when an infinite expansion (an inverse or a
//! square root) is produced. [`PrecisionPolicy::run`] retries a computation
//! with doubled depths until it is decided or the refinement cap is reached.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-level expansion depth; index 0 is the finest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    depths: Vec<u32>,
}

impl Precision {
    pub fn new(depths: Vec<u32>) -> Self {
        Precision { depths }
    }

    pub fn uniform(rank: usize, depth: u32) -> Self {
        Precision { depths: vec![depth; rank] }
    }

    /// Depth used at `level` (1-based variable index). Levels beyond the
    /// configured ones reuse the last entry.
    pub fn depth(&self, level: usize) -> u32 {
        self.depths.get(level.saturating_sub(1)).or_else(|| self.depths.last()).copied().unwrap_or(8)
    }

    pub fn depths(&self) -> &[u32] {
        &self.depths
    }

    pub fn doubled(&self) -> Precision {
        Precision { depths: self.depths.iter().map(|d| d.saturating_mul(2)).collect() }
    }
}

/// Initial depths plus the number of doublings allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub initial: Vec<u32>,
    pub max_refinements: u32,
}

impl PrecisionPolicy {
    pub fn new(initial: Vec<u32>, max_refinements: u32) -> Self {
        PrecisionPolicy { initial, max_refinements }
    }

    /// Default policy: depth 8 on every level, four refinements.
    pub fn default_for_rank(rank: usize) -> Self {
        PrecisionPolicy { initial: vec![8; rank.max(1)], max_refinements: 4 }
    }

    pub fn start(&self) -> Precision {
        Precision::new(self.initial.clone())
    }

    /// Runs `f` at increasing precision while it reports
    /// [`Error::InsufficientPrecision`].
    pub fn run<T>(&self, mut f: impl FnMut(&Precision) -> Result<T>) -> Result<T> {
        let mut p = self.start();
        for attempt in 0..=self.max_refinements {
            match f(&p) {
                Err(Error::InsufficientPrecision) if attempt < self.max_refinements => {
                    p = p.doubled();
                }
                other => return other,
            }
        }
        Err(Error::InsufficientPrecision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_doubles_until_decided() {
        let policy = PrecisionPolicy::new(vec![8, 8], 4);
        let mut seen = Vec::new();
        let r = policy.run(|p| {
            seen.push(p.depth(1));
            if p.depth(1) >= 32 {
                Ok(p.depth(1))
            } else {
                Err(Error::InsufficientPrecision)
            }
        });
        assert_eq!(r, Ok(32));
        assert_eq!(seen, vec![8, 16, 32]);
    }

    #[test]
    fn run_gives_up_after_cap() {
        let policy = PrecisionPolicy::new(vec![8], 2);
        let mut calls = 0;
        let r: Result<()> = policy.run(|_| {
            calls += 1;
            Err(Error::InsufficientPrecision)
        });
        assert_eq!(r, Err(Error::InsufficientPrecision));
        assert_eq!(calls, 3);
    }
}
