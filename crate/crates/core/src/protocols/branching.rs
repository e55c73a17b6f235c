use serde::{Deserialize, Serialize};

use super::{
    branch_records, measures_close, rows, total_measure, BranchRecord, BranchRow, BranchTable, ProtocolReport, Runner,
    BRANCH_TOL,
};
use crate::descriptors::reconstruct_density;
use crate::error::Result;
use crate::linalg::ComplexMatrix;

pub(crate) const ALICE: usize = 0;
pub(crate) const BOB: usize = 1;
pub(crate) const ALICE_RECORD: usize = 2;
pub(crate) const BOB_RECORD: usize = 3;
pub(crate) const JOINT: [usize; 2] = [4, 5];

/// Measures a qubit along the axis `cos θ Z + sin θ X` into `record`.
pub(crate) fn measure(run: &mut Runner, qubit: usize, record: usize, theta: f64) -> Result<()> {
    if theta != 0.0 {
        run.gate("RY", &[-theta], &[qubit])?;
    }
    run.gate("CNOT", &[], &[qubit, record])
}

/// State of the six-qubit run after both wings measured, before comparing.
pub(crate) struct Wings {
    pub run: Runner,
    /// Deltas of (Bob, Bob's record) across Alice's measurement.
    pub bob_deltas_under_alice: [f64; 2],
    /// Deltas of (Alice, Alice's record) across Bob's measurement.
    pub alice_deltas_under_bob: [f64; 2],
    pub alice_branches: Vec<BranchRecord>,
}

pub(crate) fn run_wings(theta_a: f64, theta_b: f64, prefix: &str) -> Result<Wings> {
    let mut run = Runner::new(6)?;
    run.stage(format!("{prefix}share"));
    run.gate("H", &[], &[ALICE])?;
    run.gate("CNOT", &[], &[ALICE, BOB])?;

    run.stage(format!("{prefix}alice"));
    let before = [run.frame().descriptor(BOB).clone(), run.frame().descriptor(BOB_RECORD).clone()];
    measure(&mut run, ALICE, ALICE_RECORD, theta_a)?;
    let bob_deltas_under_alice = [
        before[0].max_delta(run.frame().descriptor(BOB))?,
        before[1].max_delta(run.frame().descriptor(BOB_RECORD))?,
    ];
    let alice_branches = branch_records(run.frame(), &[ALICE_RECORD])?;

    run.stage(format!("{prefix}bob"));
    let before = [run.frame().descriptor(ALICE).clone(), run.frame().descriptor(ALICE_RECORD).clone()];
    measure(&mut run, BOB, BOB_RECORD, theta_b)?;
    let alice_deltas_under_bob = [
        before[0].max_delta(run.frame().descriptor(ALICE))?,
        before[1].max_delta(run.frame().descriptor(ALICE_RECORD))?,
    ];
    Ok(Wings {
        run,
        bob_deltas_under_alice,
        alice_deltas_under_bob,
        alice_branches,
    })
}

/// Copies both records into the joint register.
pub(crate) fn compare(run: &mut Runner, prefix: &str) -> Result<Vec<BranchRecord>> {
    run.stage(format!("{prefix}compare"));
    run.gate("CNOT", &[], &[ALICE_RECORD, JOINT[0]])?;
    run.gate("CNOT", &[], &[BOB_RECORD, JOINT[1]])?;
    branch_records(run.frame(), &JOINT)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchingOutcome {
    /// Bob's measurement axis angle in the X–Z plane (Alice measures `Z`).
    pub bob_angle: f64,
    /// Alice's record after her measurement only.
    pub alice_branches: Vec<BranchRecord>,
    pub bob_deltas_under_alice: [f64; 2],
    pub alice_deltas_under_bob: [f64; 2],
    /// Density of (Alice, Alice's record) after both measurements, before comparison.
    pub alice_side_density: ComplexMatrix,
    pub joint_branches: Vec<BranchRecord>,
    pub expected_joint: Vec<f64>,
    pub joint_deviation: f64,
}

impl BranchTable for BranchingOutcome {
    fn branch_rows(&self) -> Vec<BranchRow> {
        let mut out = rows("alice", &self.alice_branches);
        out.extend(rows("joint", &self.joint_branches));
        out
    }
}

/// Both wings of `(|00> + |11>)/√2` measure `Z`, then compare records.
pub fn local_branching_demo() -> Result<ProtocolReport<BranchingOutcome>> {
    local_branching_with(0.0)
}

/// As [`local_branching_demo`] with Bob measuring along `cos θ Z + sin θ X`.
pub fn local_branching_with(bob_angle: f64) -> Result<ProtocolReport<BranchingOutcome>> {
    let mut w = run_wings(0.0, bob_angle, "")?;
    let alice_side_density = reconstruct_density(w.run.frame(), &[ALICE, ALICE_RECORD])?;
    let joint_branches = compare(&mut w.run, "")?;

    let (same, diff) = ((bob_angle / 2.0).cos().powi(2) / 2.0, (bob_angle / 2.0).sin().powi(2) / 2.0);
    let expected_joint = vec![same, diff, diff, same];
    let joint_deviation = measures_close(&joint_branches, &expected_joint);
    let alice_ok = measures_close(&w.alice_branches, &[0.5, 0.5]) <= BRANCH_TOL;

    let pass = w.run.audits_pass()
        && w.bob_deltas_under_alice == [0.0, 0.0]
        && w.alice_deltas_under_bob == [0.0, 0.0]
        && alice_ok
        && joint_deviation <= BRANCH_TOL
        && (total_measure(&joint_branches) - 1.0).abs() <= BRANCH_TOL;
    Ok(ProtocolReport {
        protocol: "branching".into(),
        outcome: BranchingOutcome {
            bob_angle,
            alice_branches: w.alice_branches,
            bob_deltas_under_alice: w.bob_deltas_under_alice,
            alice_deltas_under_bob: w.alice_deltas_under_bob,
            alice_side_density,
            joint_branches,
            expected_joint,
            joint_deviation,
        },
        steps: w.run.into_steps(),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_passes_with_exact_locality() {
        let r = local_branching_demo().unwrap();
        assert!(r.pass);
        assert_eq!(r.outcome.bob_deltas_under_alice, [0.0, 0.0]);
        let m: Vec<f64> = r.outcome.joint_branches.iter().map(|b| b.measure).collect();
        for (a, e) in m.iter().zip([0.5, 0.0, 0.0, 0.5]) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn alice_side_ignores_bobs_basis() {
        let a = local_branching_with(0.0).unwrap().outcome.alice_side_density;
        for theta in [0.3, 1.2, -2.0] {
            let r = local_branching_with(theta).unwrap();
            assert!(r.pass);
            assert!(r.outcome.alice_side_density.max_abs_diff(&a).unwrap() <= 1e-10);
        }
    }
}
