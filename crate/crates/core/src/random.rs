//! Seeded sampling for the property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circuit::Circuit;
use crate::gates::{Gate, GateKind};
use crate::linalg::{ComplexMatrix, C64};
use crate::pauli::{Pauli, PauliSum, PauliWord, Phase};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of case `k` in a suite seeded with `seed`.
pub fn case_seed(seed: u64, k: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random unitary: Gram–Schmidt on the columns of a complex Ginibre
/// matrix. Gram–Schmidt yields a positive diagonal in `R`, so `Q` is Haar.
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = (0..dim).map(|_| (0..dim).map(|_| gaussian(rng)).collect()).collect();
    for k in 0..dim {
        // two passes keep the columns orthogonal to working precision
        for _ in 0..2 {
            for j in 0..k {
                let (done, rest) = cols.split_at_mut(k);
                let proj: C64 = done[j].iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
                for (x, q) in rest[0].iter_mut().zip(&done[j]) {
                    *x -= proj * q;
                }
            }
        }
        let n = cols[k].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for x in &mut cols[k] {
            *x /= n;
        }
    }
    let mut u = ComplexMatrix::zeros(dim);
    for (c, col) in cols.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            u.set(r, c, v);
        }
    }
    u
}

/// Random normalized qubit amplitudes `(α, β)`.
pub fn random_qubit_state(rng: &mut impl Rng) -> (C64, C64) {
    let (a, b) = (gaussian(rng), gaussian(rng));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    (a / n, b / n)
}

const ONE_QUBIT: [GateKind; 11] = [
    GateKind::H,
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::S,
    GateKind::Sdg,
    GateKind::T,
    GateKind::Tdg,
    GateKind::Rx,
    GateKind::Ry,
    GateKind::Rz,
];
const TWO_QUBIT: [GateKind; 4] = [GateKind::Cnot, GateKind::Cz, GateKind::Swap, GateKind::CPhase];

/// A random library gate with random distinct qubit targets among `n`.
pub fn random_instruction(n: usize, rng: &mut impl Rng) -> (Gate, Vec<usize>) {
    let two = n >= 2 && rng.random_bool(0.35);
    let kind = if two {
        TWO_QUBIT[rng.random_range(0..TWO_QUBIT.len())]
    } else {
        ONE_QUBIT[rng.random_range(0..ONE_QUBIT.len())]
    };
    let params: Vec<f64> = (0..kind.param_count())
        .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect();
    let mut targets = vec![rng.random_range(0..n)];
    if two {
        let mut t = rng.random_range(0..n - 1);
        if t >= targets[0] {
            t += 1;
        }
        targets.push(t);
    }
    (Gate::from_kind(kind, &params).expect("library arity"), targets)
}

/// Random Clifford+T+rotation circuit on `n` qubits.
pub fn random_circuit(n: usize, depth: usize, rng: &mut impl Rng) -> Circuit {
    let instructions = (0..depth)
        .map(|_| {
            let (g, t) = random_instruction(n, rng);
            crate::circuit::Instruction::new(g, t)
        })
        .collect();
    Circuit::from_instructions(instructions)
}

/// Uniformly random Pauli word on `n` qubits with phase `+1`, not the identity.
pub fn random_pauli_word(n: usize, rng: &mut impl Rng) -> PauliWord {
    const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    loop {
        let letters: Vec<Pauli> = (0..n).map(|_| LETTERS[rng.random_range(0..4)]).collect();
        let w = PauliWord::new(letters, Phase::PlusOne);
        if !w.is_identity() {
            return w;
        }
    }
}

/// Hermitian observable: a random word with a real coefficient in `[-2, 2]`.
pub fn random_pauli_observable(n: usize, rng: &mut impl Rng) -> PauliSum {
    let coeff = C64::new(rng.random_range(-2.0..2.0), 0.0);
    PauliSum::from_word(coeff, random_pauli_word(n, rng))
}

/// Random normalized state vector.
pub fn random_state(dim: usize, rng: &mut impl Rng) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
    let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;

    #[test]
    fn haar_samples_are_unitary_and_seeded() {
        for dim in [1, 2, 5, 16] {
            let u = haar_unitary(dim, &mut rng(7));
            assert!(u.unitarity_deviation() < 1e-13, "dim {dim}");
            assert_eq!(u, haar_unitary(dim, &mut rng(7)));
        }
        assert_ne!(haar_unitary(4, &mut rng(1)), haar_unitary(4, &mut rng(2)));
    }

    #[test]
    fn haar_first_moment_vanishes() {
        // E[u_00] = 0 and E[|u_00|^2] = 1/d for Haar measure
        let mut r = rng(3);
        let (mut mean, mut second) = (ZERO, 0.0);
        let samples = 4000;
        for _ in 0..samples {
            let v = haar_unitary(3, &mut r).get(0, 0);
            mean += v;
            second += v.norm_sqr();
        }
        assert!((mean / samples as f64).norm() < 0.03);
        assert!((second / samples as f64 - 1.0 / 3.0).abs() < 0.02);
    }

    #[test]
    fn circuits_are_valid_and_reproducible() {
        let layout = crate::layout::SystemLayout::qubits(4).unwrap();
        let c = random_circuit(4, 30, &mut rng(11));
        c.validate(&layout).unwrap();
        assert_eq!(c, random_circuit(4, 30, &mut rng(11)));
        let one = random_circuit(1, 10, &mut rng(1));
        assert!(one.instructions().iter().all(|i| i.targets == vec![0]));
    }

    #[test]
    fn words_and_states() {
        let mut r = rng(5);
        for _ in 0..50 {
            assert!(!random_pauli_word(3, &mut r).is_identity());
            assert!(random_pauli_observable(2, &mut r).is_hermitian(0.0));
        }
        let (a, b) = random_qubit_state(&mut r);
        assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-14);
        assert!((crate::linalg::norm(&random_state(8, &mut r)) - 1.0).abs() < 1e-14);
        assert_ne!(case_seed(42, 0), case_seed(42, 1));
    }
}
