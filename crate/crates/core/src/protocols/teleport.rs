use serde::{Deserialize, Serialize};

use super::{ProtocolReport, Runner};
use crate::descriptors::reconstruct_density;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::tolerance;

const INPUT: usize = 0;
const ALICE: usize = 1;
const BOB: usize = 2;
const FIRST_MESSAGE: usize = 3;

/// How Alice's two bits travel to Bob.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Channel {
    /// Fully dephase the pair Bob reads, each qubit through its own
    /// environment qubit (`H(env)` then `CZ(env, message)`).
    pub dephase: bool,
    /// Number of message pairs the bits pass through; every pair after the
    /// first is filled by CNOT copies from the previous one.
    pub hops: usize,
}

impl Default for Channel {
    fn default() -> Self {
        Self { dephase: false, hops: 1 }
    }
}

impl Channel {
    pub fn n_qubits(&self) -> usize {
        FIRST_MESSAGE + 2 * self.hops + if self.dephase { 2 } else { 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeleportOutcome {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub channel: Channel,
    pub bob_density: ComplexMatrix,
    pub expected_density: ComplexMatrix,
    pub density_deviation: f64,
    /// `<in|ρ_Bob|in>`.
    pub fidelity: f64,
    /// Change of Bob's descriptor between sharing the pair and the first
    /// correction.
    pub bob_delta_before_corrections: f64,
}

/// Teleports `α|0> + β|1>` from qubit 0 to Bob's qubit 2.
///
/// Alice's Bell-basis interaction (`CNOT(0,1)`, `H(0)`) is followed by CNOT
/// copies of qubits 0 and 1 into the first message pair. Bob applies
/// `X` controlled by the copy of qubit 1 and `Z` controlled by the copy of
/// qubit 0, reading the last pair of the channel.
pub fn teleportation(alpha: C64, beta: C64, channel: Channel) -> Result<ProtocolReport<TeleportOutcome>> {
    let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    if (n - 1.0).abs() > tolerance::UNITARITY {
        return Err(Error::NotNormalized { norm: n });
    }
    if channel.hops == 0 {
        return Err(Error::InvalidArgument("the channel needs at least one hop".into()));
    }
    let mut run = Runner::new(channel.n_qubits())?;

    run.stage("share");
    run.gate("H", &[], &[ALICE])?;
    run.gate("CNOT", &[], &[ALICE, BOB])?;
    let bob_shared = run.frame().descriptor(BOB).clone();

    run.stage("prepare");
    let prep = ComplexMatrix::from_rows(&[vec![alpha, -beta.conj()], vec![beta, alpha.conj()]])?;
    run.unitary("PREP", prep, &[INPUT])?;

    run.stage("alice");
    run.gate("CNOT", &[], &[INPUT, ALICE])?;
    run.gate("H", &[], &[INPUT])?;
    let pair = |h: usize| (FIRST_MESSAGE + 2 * h, FIRST_MESSAGE + 2 * h + 1);
    let (z_bit, x_bit) = pair(0);
    run.gate("CNOT", &[], &[INPUT, z_bit])?;
    run.gate("CNOT", &[], &[ALICE, x_bit])?;

    for h in 1..channel.hops {
        run.stage(format!("relay {h}"));
        let ((pz, px), (nz, nx)) = (pair(h - 1), pair(h));
        run.gate("CNOT", &[], &[pz, nz])?;
        run.gate("CNOT", &[], &[px, nx])?;
    }
    let (z_last, x_last) = pair(channel.hops - 1);
    if channel.dephase {
        run.stage("dephase");
        let env = FIRST_MESSAGE + 2 * channel.hops;
        for (e, m) in [(env, z_last), (env + 1, x_last)] {
            run.gate("H", &[], &[e])?;
            run.gate("CZ", &[], &[e, m])?;
        }
    }

    let bob_delta_before_corrections = bob_shared.max_delta(run.frame().descriptor(BOB))?;
    run.stage("bob");
    run.gate("CNOT", &[], &[x_last, BOB])?;
    run.gate("CZ", &[], &[z_last, BOB])?;

    let bob_density = reconstruct_density(run.frame(), &[BOB])?;
    let input = [alpha, beta];
    let expected_density = ComplexMatrix::outer(&input, &input)?;
    let density_deviation = bob_density.max_abs_diff(&expected_density)?;
    let fidelity = crate::linalg::inner(&input, &bob_density.apply(&input)?).re;

    let pass = run.audits_pass()
        && bob_delta_before_corrections == 0.0
        && density_deviation <= tolerance::DENSITY
        && fidelity >= 1.0 - tolerance::DENSITY;
    Ok(ProtocolReport {
        protocol: "teleport".into(),
        steps: run.into_steps(),
        outcome: TeleportOutcome {
            alpha: [alpha.re, alpha.im],
            beta: [beta.re, beta.im],
            channel,
            bob_density,
            expected_density,
            density_deviation,
            fidelity,
            bob_delta_before_corrections,
        },
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn basis_state() {
        let r = teleportation(c(1.0, 0.0), c(0.0, 0.0), Channel::default()).unwrap();
        assert!(r.pass);
        let zero = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        assert!(r.outcome.bob_density.max_abs_diff(&zero).unwrap() < 1e-12);
    }

    #[test]
    fn plus_state() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let r = teleportation(c(s, 0.0), c(s, 0.0), Channel::default()).unwrap();
        assert!(r.pass);
        let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        assert!(r.outcome.bob_density.max_abs_diff(&plus).unwrap() < 1e-12);
    }

    #[test]
    fn dephased_channel_gives_the_same_density() {
        let clean = teleportation(c(0.6, 0.0), c(0.0, 0.8), Channel::default()).unwrap();
        let noisy = teleportation(c(0.6, 0.0), c(0.0, 0.8), Channel { dephase: true, hops: 1 }).unwrap();
        assert!(clean.pass && noisy.pass);
        let d = clean.outcome.bob_density.max_abs_diff(&noisy.outcome.bob_density).unwrap();
        assert!(d < 1e-9);
        assert_eq!(noisy.outcome.bob_delta_before_corrections, 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            teleportation(c(1.0, 0.0), c(1.0, 0.0), Channel::default()),
            Err(Error::NotNormalized { .. })
        ));
        assert!(teleportation(c(1.0, 0.0), c(0.0, 0.0), Channel { dephase: false, hops: 0 }).is_err());
    }
}
