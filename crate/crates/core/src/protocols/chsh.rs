use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::branching::{compare, run_wings, ALICE, ALICE_RECORD, BOB, BOB_RECORD, JOINT};
use super::{rows, total_measure, BranchRecord, BranchRow, BranchTable, ProtocolReport, BRANCH_TOL};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::layout::SystemLayout;
use crate::pictures::schrodinger_run;
use crate::tolerance;

pub const ANGLE_CONVENTION: &str = "a party with angle θ measures cos(θ)·Z + sin(θ)·X, \
     implemented as RY(−θ) followed by a CNOT onto its record; record bit 0 is the +1 outcome; \
     inputs x, y select (a, a′) and (b, b′); the pair wins iff a ⊕ b = x ∧ y";

/// Measurement angles, in radians, in the X–Z plane of the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshAngles {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
}

impl ChshAngles {
    pub fn optimal() -> Self {
        Self {
            a: 0.0,
            a_prime: PI / 2.0,
            b: PI / 4.0,
            b_prime: -PI / 4.0,
        }
    }

    pub fn classical() -> Self {
        Self {
            a: 0.0,
            a_prime: 0.0,
            b: 0.0,
            b_prime: 0.0,
        }
    }
}

impl Default for ChshAngles {
    fn default() -> Self {
        Self::optimal()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChshSetting {
    pub x: u8,
    pub y: u8,
    pub alice_angle: f64,
    pub bob_angle: f64,
    /// Joint-record branches `00, 01, 10, 11` (Alice's bit first).
    pub branches: Vec<BranchRecord>,
    pub winning_measure: f64,
    /// `P(a = b) − P(a ≠ b)`.
    pub correlation: f64,
    /// Largest difference from the state-vector Born probabilities.
    pub oracle_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChshOutcome {
    pub angles: ChshAngles,
    pub convention: String,
    pub settings: Vec<ChshSetting>,
    /// Winning measure averaged over uniformly weighted settings.
    pub winning_measure: f64,
    /// `E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′)`.
    pub s_value: f64,
    pub max_oracle_deviation: f64,
}

impl BranchTable for ChshOutcome {
    fn branch_rows(&self) -> Vec<BranchRow> {
        self.settings
            .iter()
            .flat_map(|s| rows(&format!("x={},y={}", s.x, s.y), &s.branches))
            .collect()
    }
}

fn oracle_measures(theta_a: f64, theta_b: f64) -> Result<Vec<f64>> {
    let mut c = Circuit::new().with("H", &[], &[ALICE])?.with("CNOT", &[], &[ALICE, BOB])?;
    for (q, r, t) in [(ALICE, ALICE_RECORD, theta_a), (BOB, BOB_RECORD, theta_b)] {
        if t != 0.0 {
            c.push("RY", &[-t], &[q])?;
        }
        c.push("CNOT", &[], &[q, r])?;
    }
    c.push("CNOT", &[], &[ALICE_RECORD, JOINT[0]])?;
    c.push("CNOT", &[], &[BOB_RECORD, JOINT[1]])?;
    let psi = schrodinger_run(&c, &SystemLayout::qubits(6)?)?;
    let rho = psi.reduced_density(&JOINT)?;
    Ok((0..4).map(|b| rho.get(b, b).re).collect())
}

/// Plays all four setting pairs of the CHSH game on a shared `(|00> + |11>)/√2`.
pub fn chsh_game(angles: ChshAngles) -> Result<ProtocolReport<ChshOutcome>> {
    for a in [angles.a, angles.a_prime, angles.b, angles.b_prime] {
        if !a.is_finite() {
            return Err(Error::InvalidArgument(format!("angle {a} is not finite")));
        }
    }
    let mut steps = Vec::new();
    let mut settings = Vec::with_capacity(4);
    let mut audits = true;
    for x in 0..2u8 {
        for y in 0..2u8 {
            let alice_angle = if x == 0 { angles.a } else { angles.a_prime };
            let bob_angle = if y == 0 { angles.b } else { angles.b_prime };
            let prefix = format!("x={x},y={y}: ");
            let mut w = run_wings(alice_angle, bob_angle, &prefix)?;
            let branches = compare(&mut w.run, &prefix)?;
            audits &= w.run.audits_pass()
                && w.bob_deltas_under_alice == [0.0, 0.0]
                && w.alice_deltas_under_bob == [0.0, 0.0]
                && (total_measure(&branches) - 1.0).abs() <= BRANCH_TOL;
            steps.extend(w.run.into_steps());

            let m: Vec<f64> = branches.iter().map(|b| b.measure).collect();
            let wins_on_equal = x & y == 0;
            let (equal, differ) = (m[0] + m[3], m[1] + m[2]);
            let winning_measure = if wins_on_equal { equal } else { differ };
            let oracle = oracle_measures(alice_angle, bob_angle)?;
            let oracle_deviation = m.iter().zip(&oracle).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            settings.push(ChshSetting {
                x,
                y,
                alice_angle,
                bob_angle,
                branches,
                winning_measure,
                correlation: equal - differ,
                oracle_deviation,
            });
        }
    }
    let winning_measure = settings.iter().map(|s| s.winning_measure).sum::<f64>() / 4.0;
    let e = |x: u8, y: u8| settings[(2 * x + y) as usize].correlation;
    let s_value = e(0, 0) + e(0, 1) + e(1, 0) - e(1, 1);
    let max_oracle_deviation = settings.iter().map(|s| s.oracle_deviation).fold(0.0, f64::max);
    let pass = audits && max_oracle_deviation <= tolerance::BRANCH;
    Ok(ProtocolReport {
        protocol: "chsh".into(),
        steps,
        outcome: ChshOutcome {
            angles,
            convention: ANGLE_CONVENTION.into(),
            settings,
            winning_measure,
            s_value,
            max_oracle_deviation,
        },
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimal_angles_reach_tsirelson() {
        let r = chsh_game(ChshAngles::optimal()).unwrap();
        assert!(r.pass);
        assert!((r.outcome.winning_measure - (2.0 + 2f64.sqrt()) / 4.0).abs() < 1e-12);
        assert!((r.outcome.s_value - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn aligned_z_measurements_always_agree() {
        let r = chsh_game(ChshAngles::classical()).unwrap();
        let first = &r.outcome.settings[0];
        assert!((first.correlation - 1.0).abs() < 1e-12);
        assert!((first.winning_measure - 1.0).abs() < 1e-12);
        assert!((r.outcome.winning_measure - 0.75).abs() < 1e-12);
    }

    #[test]
    fn non_finite_angles_rejected() {
        let mut a = ChshAngles::optimal();
        a.b = f64::NAN;
        assert!(chsh_game(a).is_err());
    }
}
