//! Numerical tolerances used by checks throughout the crate.
//!
//! Every default lives here so that reports can echo the exact thresholds
//! they were evaluated against.

use serde::{Deserialize, Serialize};

pub const UNITARITY: f64 = 1e-10;
pub const HERMITICITY: f64 = 1e-10;
pub const PAULI_PRUNE: f64 = 1e-12;
pub const LOCALITY: f64 = 1e-10;
pub const EQUIVALENCE: f64 = 1e-9;
pub const STEP_GLOBAL: f64 = 1e-9;
pub const DENSITY: f64 = 1e-9;
pub const NOUMENAL: f64 = 1e-9;
pub const RECOVERY: f64 = 1e-8;
pub const PIVOT: f64 = 1e-6;
pub const PROJECTIVE: f64 = 1e-10;
pub const BRANCH: f64 = 1e-10;
/// Largest unitarity deviation of a rebuilt gate operator that step
/// evolution will refine rather than reject.
pub const DRIFT: f64 = 1e-6;

/// Tolerance set carried by checks and echoed in reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub unitarity: f64,
    pub hermiticity: f64,
    pub pauli_prune: f64,
    pub locality: f64,
    pub equivalence: f64,
    pub step_global: f64,
    pub density: f64,
    pub noumenal: f64,
    pub recovery: f64,
    pub pivot: f64,
    pub projective: f64,
    pub branch: f64,
    pub drift: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unitarity: UNITARITY,
            hermiticity: HERMITICITY,
            pauli_prune: PAULI_PRUNE,
            locality: LOCALITY,
            equivalence: EQUIVALENCE,
            step_global: STEP_GLOBAL,
            density: DENSITY,
            noumenal: NOUMENAL,
            recovery: RECOVERY,
            pivot: PIVOT,
            projective: PROJECTIVE,
            branch: BRANCH,
            drift: DRIFT,
        }
    }
}
