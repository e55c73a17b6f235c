//! Network protocols run step by step on descriptors, with a locality audit
//! after every gate.
//!
//! Measurements are unitary: a CNOT from the measured qubit onto a fresh
//! record qubit, preceded by a basis rotation when the measured axis is not
//! `Z`. A branch is a computational-basis configuration of record qubits;
//! its measure is the matching diagonal entry of the records' density,
//! reconstructed from descriptors.

mod branching;
mod chsh;
mod sdc;
mod teleport;

pub use branching::{local_branching_demo, local_branching_with, BranchingOutcome};
pub use chsh::{chsh_game, ChshAngles, ChshOutcome, ChshSetting};
pub use sdc::{superdense_coding, SdcOutcome};
pub use teleport::{teleportation, Channel, TeleportOutcome};

use serde::{Deserialize, Serialize};

use crate::descriptors::{locality_audit, reconstruct_density, DescriptorFrame, GateEvent, LocalityReport, StepMode};
use crate::error::Result;
use crate::layout::SystemLayout;
use crate::linalg::ComplexMatrix;
use crate::tolerance;

/// One branch of a set of record qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchRecord {
    /// Recorded outcome of each record qubit, in the order they were queried.
    pub labels: Vec<String>,
    pub measure: f64,
}

impl BranchRecord {
    pub fn key(&self) -> String {
        self.labels.concat()
    }
}

/// A gate applied during a protocol and the audit of its effect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub stage: String,
    pub gate: String,
    pub targets: Vec<usize>,
    pub audit: LocalityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolReport<O> {
    pub protocol: String,
    pub steps: Vec<StepRecord>,
    pub outcome: O,
    pub pass: bool,
}

impl<O> ProtocolReport<O> {
    pub fn audits_pass(&self) -> bool {
        self.steps.iter().all(|s| s.audit.pass)
    }
}

/// A row of a branch-measure table, for CSV export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchRow {
    pub setting: String,
    pub branch: String,
    pub measure: f64,
}

/// Outcomes that carry branch measures.
pub trait BranchTable {
    fn branch_rows(&self) -> Vec<BranchRow>;
}

pub fn branch_csv(rows: &[BranchRow]) -> String {
    let mut out = String::from("setting,branch,measure\n");
    for r in rows {
        out.push_str(&format!("{},{},{:.9e}\n", r.setting, r.branch, r.measure));
    }
    out
}

fn rows(setting: &str, branches: &[BranchRecord]) -> Vec<BranchRow> {
    branches
        .iter()
        .map(|b| BranchRow {
            setting: setting.to_string(),
            branch: b.key(),
            measure: b.measure,
        })
        .collect()
}

/// Branches of `records` with measures taken from the reconstructed density,
/// clamped to `[0, 1]` against round-off.
pub fn branch_records(frame: &DescriptorFrame, records: &[usize]) -> Result<Vec<BranchRecord>> {
    let rho = reconstruct_density(frame, records)?;
    let k = records.len();
    Ok((0..rho.dim())
        .map(|b| BranchRecord {
            labels: (0..k).map(|q| ((b >> (k - 1 - q)) & 1).to_string()).collect(),
            measure: rho.get(b, b).re.clamp(0.0, 1.0),
        })
        .collect())
}

pub(crate) fn total_measure(branches: &[BranchRecord]) -> f64 {
    branches.iter().map(|b| b.measure).sum()
}

/// Gate-by-gate driver that audits every step.
pub(crate) struct Runner {
    frame: DescriptorFrame,
    steps: Vec<StepRecord>,
    stage: String,
}

impl Runner {
    pub(crate) fn new(n_qubits: usize) -> Result<Self> {
        Ok(Self {
            frame: DescriptorFrame::new(SystemLayout::qubits(n_qubits)?)?,
            steps: Vec::new(),
            stage: String::new(),
        })
    }

    pub(crate) fn stage(&mut self, stage: impl Into<String>) {
        self.stage = stage.into();
    }

    pub(crate) fn gate(&mut self, name: &str, params: &[f64], targets: &[usize]) -> Result<()> {
        self.event(GateEvent::gate(name, params, targets)?)
    }

    pub(crate) fn unitary(&mut self, label: &str, m: ComplexMatrix, targets: &[usize]) -> Result<()> {
        self.event(GateEvent::from_matrix(label, m, targets.to_vec())?)
    }

    fn event(&mut self, event: GateEvent) -> Result<()> {
        let next = self.frame.evolve_step_with(&event, StepMode::LocalReduction)?;
        let audit = locality_audit(&self.frame, &next, event.targets())?;
        self.steps.push(StepRecord {
            stage: self.stage.clone(),
            gate: event.label().to_string(),
            targets: event.targets().to_vec(),
            audit,
        });
        self.frame = next;
        Ok(())
    }

    pub(crate) fn frame(&self) -> &DescriptorFrame {
        &self.frame
    }

    pub(crate) fn audits_pass(&self) -> bool {
        self.steps.iter().all(|s| s.audit.pass)
    }

    pub(crate) fn into_steps(self) -> Vec<StepRecord> {
        self.steps
    }
}

pub(crate) fn measures_close(branches: &[BranchRecord], expected: &[f64]) -> f64 {
    branches
        .iter()
        .zip(expected)
        .map(|(b, e)| (b.measure - e).abs())
        .fold(0.0, f64::max)
}

pub(crate) const BRANCH_TOL: f64 = tolerance::BRANCH;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_labels_follow_record_order() {
        let mut r = Runner::new(2).unwrap();
        r.gate("X", &[], &[1]).unwrap();
        let b = branch_records(r.frame(), &[0, 1]).unwrap();
        assert_eq!(b[1].key(), "01");
        assert_eq!(b[1].measure, 1.0);
        let b = branch_records(r.frame(), &[1, 0]).unwrap();
        assert_eq!(b[2].key(), "10");
        assert_eq!(b[2].measure, 1.0);
        assert_eq!(total_measure(&b), 1.0);
    }

    #[test]
    fn csv_layout() {
        let rows = rows("x=0", &[BranchRecord { labels: vec!["1".into()], measure: 0.5 }]);
        assert_eq!(branch_csv(&rows), "setting,branch,measure\nx=0,1,5.000000000e-1\n");
    }

    #[test]
    fn runner_records_audits() {
        let mut r = Runner::new(3).unwrap();
        r.stage("prep");
        r.gate("H", &[], &[0]).unwrap();
        r.gate("CNOT", &[], &[0, 2]).unwrap();
        assert!(r.audits_pass());
        let steps = r.into_steps();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[1].audit.deltas[1], 0.0);
        assert_eq!(steps[0].stage, "prep");
    }
}
