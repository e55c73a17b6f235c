use serde::{Deserialize, Serialize};

use super::{branch_records, rows, total_measure, BranchRecord, BranchRow, BranchTable, ProtocolReport, Runner};
use crate::descriptors::reconstruct_density;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::pauli::{pauli_decompose, PauliSum};
use crate::tolerance;

const ALICE: usize = 0;
const BOB: usize = 1;
const RECORDS: [usize; 2] = [2, 3];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdcOutcome {
    pub i: u8,
    pub j: u8,
    /// Branch with the largest measure, as `(i, j)`.
    pub decoded: (u8, u8),
    pub decoded_measure: f64,
    pub branches: Vec<BranchRecord>,
    /// Density of Alice's qubit while in transit.
    pub transit_density: ComplexMatrix,
    /// `max |ρ_transit − 1/2|`.
    pub transit_deviation: f64,
    /// Alice's components right after encoding, as Pauli sums.
    pub alice_x: PauliSum,
    pub alice_z: PauliSum,
    /// Largest change of Bob's descriptor during Alice's encoding.
    pub bob_delta_during_encoding: f64,
}

impl BranchTable for SdcOutcome {
    fn branch_rows(&self) -> Vec<BranchRow> {
        rows(&format!("i={},j={}", self.i, self.j), &self.branches)
    }
}

/// Sends bits `(i, j)` with one qubit of a shared Bell pair.
///
/// Qubit 0 is Alice's half, qubit 1 Bob's half, qubits 2 and 3 record the
/// decoded `i` and `j`. Alice applies `σz^i σx^j`; Bob decodes with
/// `CNOT(0,1)` and `H(0)`.
pub fn superdense_coding(i: u8, j: u8) -> Result<ProtocolReport<SdcOutcome>> {
    if i > 1 || j > 1 {
        return Err(Error::InvalidArgument(format!("bits must be 0 or 1, got ({i}, {j})")));
    }
    let mut run = Runner::new(4)?;
    run.stage("share");
    run.gate("H", &[], &[ALICE])?;
    run.gate("CNOT", &[], &[ALICE, BOB])?;

    run.stage("encode");
    let before = run.frame().descriptor(BOB).clone();
    if j == 1 {
        run.gate("X", &[], &[ALICE])?;
    }
    if i == 1 {
        run.gate("Z", &[], &[ALICE])?;
    }
    let bob_delta_during_encoding = before.max_delta(run.frame().descriptor(BOB))?;
    let alice = run.frame().descriptor(ALICE);
    let alice_x = pauli_decompose(alice.x().expect("qubit"), 4)?;
    let alice_z = pauli_decompose(alice.z().expect("qubit"), 4)?;

    let transit_density = reconstruct_density(run.frame(), &[ALICE])?;
    let half = ComplexMatrix::identity(2).scale(0.5.into());
    let transit_deviation = transit_density.max_abs_diff(&half)?;

    run.stage("decode");
    run.gate("CNOT", &[], &[ALICE, BOB])?;
    run.gate("H", &[], &[ALICE])?;
    run.stage("record");
    run.gate("CNOT", &[], &[ALICE, RECORDS[0]])?;
    run.gate("CNOT", &[], &[BOB, RECORDS[1]])?;

    let branches = branch_records(run.frame(), &RECORDS)?;
    let best = branches
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.measure.total_cmp(&b.1.measure))
        .map(|(k, b)| (k, b.measure))
        .expect("four branches");
    let decoded = ((best.0 >> 1) as u8, (best.0 & 1) as u8);

    let pass = run.audits_pass()
        && decoded == (i, j)
        && (best.1 - 1.0).abs() <= tolerance::BRANCH
        && (total_measure(&branches) - 1.0).abs() <= tolerance::BRANCH
        && transit_deviation <= tolerance::BRANCH
        && bob_delta_during_encoding == 0.0;
    Ok(ProtocolReport {
        protocol: "sdc".into(),
        steps: run.into_steps(),
        outcome: SdcOutcome {
            i,
            j,
            decoded,
            decoded_measure: best.1,
            branches,
            transit_density,
            transit_deviation,
            alice_x,
            alice_z,
            bob_delta_during_encoding,
        },
        pass,
    })
}
