use serde::{Deserialize, Serialize};

use super::DescriptorFrame;
use crate::error::{Error, Result};
use crate::tolerance;

/// Per-subsystem descriptor changes across one evolution step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalityReport {
    pub targets: Vec<usize>,
    /// Max-norm component delta of each subsystem, indexed by subsystem.
    pub deltas: Vec<f64>,
    /// Largest delta among subsystems outside `targets`.
    pub max_off_target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares two consecutive frames; passes iff every subsystem outside
/// `targets` moved by at most the locality tolerance.
pub fn locality_audit(before: &DescriptorFrame, after: &DescriptorFrame, targets: &[usize]) -> Result<LocalityReport> {
    locality_audit_with(before, after, targets, tolerance::LOCALITY)
}

pub fn locality_audit_with(
    before: &DescriptorFrame,
    after: &DescriptorFrame,
    targets: &[usize],
    tol: f64,
) -> Result<LocalityReport> {
    if before.layout != after.layout {
        return Err(Error::FrameMismatch("layouts differ".into()));
    }
    if before.reference != after.reference {
        return Err(Error::FrameMismatch("reference vectors differ".into()));
    }
    if after.time != before.time + 1 {
        return Err(Error::FrameMismatch(format!(
            "expected consecutive frames, got times {} and {}",
            before.time, after.time
        )));
    }
    before.layout.check_targets(targets)?;
    let deltas = before.subsystem_deltas(after)?;
    let max_off_target = deltas
        .iter()
        .enumerate()
        .filter(|(s, _)| !targets.contains(s))
        .map(|(_, &d)| d)
        .fold(0.0, f64::max);
    Ok(LocalityReport {
        targets: targets.to_vec(),
        pass: max_off_target <= tol,
        deltas,
        max_off_target,
        tolerance: tol,
    })
}
