//! Experiment orchestration around `jacwalk-core`: seeded curve search,
//! walk/linear-complexity experiment runs with structured CSV/JSON export,
//! and exhaustive small-field verification of the intersection lemmas.
//!
//! Everything is deterministic in the configured seed: identical configs
//! produce byte-identical exports.

pub mod config;
pub mod experiment;
pub mod export;
pub mod lemmas;
pub mod search;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] jacwalk_core::Error),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error at {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serde(String),

    #[error("refusing to export an empty record set")]
    EmptyRecords,

    #[error("curve search exhausted its sampling budget")]
    SearchExhausted,
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// splitmix64 step, used to derive independent per-task seeds from the
/// configured master seed.
pub(crate) fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
