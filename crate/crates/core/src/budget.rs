use serde::{Deserialize, Serialize};

pub const DEFAULT_ENUMERATION: u64 = 1_000_000;
pub const DEFAULT_TRIALS: u32 = 64;

/// Limits for brute-force searches and randomized isomorphism trials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    /// Maximum number of candidate vectors per enumeration.
    pub enumeration: u64,
    pub trials: u32,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: DEFAULT_ENUMERATION,
            trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }
}

impl Budget {
    pub fn with_enumeration(enumeration: u64) -> Self {
        Budget {
            enumeration,
            ..Budget::default()
        }
    }
}
