//! Dense reference computations on nalgebra matrices, written independently
//! of the crate's embedding, decomposition and reconstruction code.
#![allow(dead_code)]

use descriptor_lab::{Circuit, ComplexMatrix, C64};
use nalgebra::{DMatrix, DVector};

pub type M = DMatrix<C64>;
pub type V = DVector<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn to_na(m: &ComplexMatrix) -> M {
    let n = m.dim();
    M::from_fn(n, n, |r, k| m.get(r, k))
}

pub fn from_na(m: &M) -> ComplexMatrix {
    let rows: Vec<Vec<C64>> = (0..m.nrows()).map(|r| (0..m.ncols()).map(|k| m[(r, k)]).collect()).collect();
    ComplexMatrix::from_rows(&rows).unwrap()
}

pub fn max_diff(a: &M, b: &M) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn bit(x: usize, q: usize, n: usize) -> usize {
    (x >> (n - 1 - q)) & 1
}

/// `g` on qubits `targets` of `n`, built entry by entry from basis bits.
pub fn embed(g: &M, targets: &[usize], n: usize) -> M {
    let dim = 1 << n;
    let sub = |x: usize| targets.iter().fold(0, |acc, &t| (acc << 1) | bit(x, t, n));
    let others_equal = |r: usize, k: usize| (0..n).filter(|q| !targets.contains(q)).all(|q| bit(r, q, n) == bit(k, q, n));
    M::from_fn(dim, dim, |r, k| if others_equal(r, k) { g[(sub(r), sub(k))] } else { c(0.0, 0.0) })
}

pub fn pauli(ch: char) -> M {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match ch {
        'I' => M::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => M::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => M::from_row_slice(2, 2, &[z, -i, i, z]),
        'Z' => M::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => panic!("not a Pauli letter: {ch}"),
    }
}

/// Kronecker product of single-qubit Paulis, first letter most significant.
pub fn word(letters: &str) -> M {
    letters.chars().fold(M::from_element(1, 1, c(1.0, 0.0)), |acc, ch| acc.kronecker(&pauli(ch)))
}

pub fn circuit_unitary(circuit: &Circuit, n: usize) -> M {
    let mut u = M::identity(1 << n, 1 << n);
    for ins in circuit.instructions() {
        u = embed(&to_na(&ins.gate.matrix()), &ins.targets, n) * u;
    }
    u
}

pub fn zero_state(n: usize) -> V {
    let mut v = V::from_element(1 << n, c(0.0, 0.0));
    v[0] = c(1.0, 0.0);
    v
}

pub fn statevector(circuit: &Circuit, n: usize) -> V {
    circuit_unitary(circuit, n) * zero_state(n)
}

pub fn expect(psi: &V, o: &M) -> f64 {
    (psi.adjoint() * o * psi)[(0, 0)].re
}

/// Reduced density of `subset` (basis ordered by `subset`) by summing over
/// every assignment of the remaining qubits.
pub fn partial_trace(psi: &V, subset: &[usize], n: usize) -> M {
    let rest: Vec<usize> = (0..n).filter(|q| !subset.contains(q)).collect();
    let k = subset.len();
    let index = |s: usize, r: usize| {
        let mut idx = 0;
        for (pos, &q) in subset.iter().enumerate() {
            idx |= ((s >> (k - 1 - pos)) & 1) << (n - 1 - q);
        }
        for (pos, &q) in rest.iter().enumerate() {
            idx |= ((r >> (rest.len() - 1 - pos)) & 1) << (n - 1 - q);
        }
        idx
    };
    M::from_fn(1 << k, 1 << k, |i, j| {
        (0..1usize << rest.len())
            .map(|r| psi[index(i, r)] * psi[index(j, r)].conj())
            .sum()
    })
}

/// Coefficient of a Pauli word in `a`: `Tr(P a) / 2^n`.
pub fn pauli_coefficient(a: &M, letters: &str) -> C64 {
    let p = word(letters);
    (p * a).trace() / c((1usize << letters.len()) as f64, 0.0)
}

/// Every Pauli word on `n` qubits.
pub fn all_words(n: usize) -> Vec<String> {
    (0..1usize << (2 * n))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let ch = ['I', 'X', 'Y', 'Z'][x & 3];
                    x >>= 2;
                    ch
                })
                .collect()
        })
        .collect()
}

/// `u† q u`.
pub fn heisenberg(u: &M, q: &M) -> M {
    u.adjoint() * q * u
}
