//! Experiment configuration, read from JSON:
//!
//! ```json
//! {"primes": [7, 11, 13], "curves_per_prime": 3, "tags": ["u0", "u1"],
//!  "n_max": 2048, "c_num": 1, "c_den": 1296, "seed": 42}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use jacwalk_core::field::Prime;
use jacwalk_core::generator::CoordinateTag;

use crate::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Field characteristics to sweep.
    pub primes: Vec<u64>,
    /// Curves retained per prime (the search samples twice as many).
    pub curves_per_prime: u32,
    /// Coordinate functions to stream, by name (`u0`, `v1`, `z122`, ...).
    pub tags: Vec<String>,
    /// Stream length cap; full-period runs happen whenever `t <= n_max`.
    pub n_max: u64,
    /// Numerator of the lower-bound constant c.
    pub c_num: u64,
    /// Denominator of the lower-bound constant c.
    pub c_den: u64,
    /// Master seed; all sampling derives deterministically from it.
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(s).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::from_json(&s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(HarnessError::Config("primes must be nonempty".into()));
        }
        for &p in &self.primes {
            Prime::new(p)?;
        }
        if self.curves_per_prime == 0 {
            return Err(HarnessError::Config("curves_per_prime must be >= 1".into()));
        }
        if self.tags.is_empty() {
            return Err(HarnessError::Config("tags must be nonempty".into()));
        }
        self.parsed_tags()?;
        if self.n_max == 0 {
            return Err(HarnessError::Config("n_max must be >= 1".into()));
        }
        if self.c_num == 0 || self.c_den == 0 {
            return Err(HarnessError::Config("c must be a positive rational".into()));
        }
        Ok(())
    }

    pub fn parsed_tags(&self) -> Result<Vec<CoordinateTag>> {
        self.tags
            .iter()
            .map(|t| CoordinateTag::parse(t).map_err(HarnessError::from))
            .collect()
    }
}
