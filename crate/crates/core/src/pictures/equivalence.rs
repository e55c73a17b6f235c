use serde::{Deserialize, Serialize};

use super::{born_expectation, schrodinger_run};
use crate::circuit::Circuit;
use crate::descriptors::{expectation, DescriptorFrame, StepMode};
use crate::error::{Error, Result};
use crate::layout::SystemLayout;
use crate::linalg::{basis_vector, conjugate, inner, ComplexMatrix};
use crate::pauli::{Pauli, PauliSum};
use crate::tolerance;

/// The three expressions of one Born-rule expectation value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// `<ψ_t|O|ψ_t>` from the state-vector run.
    pub schrodinger: f64,
    /// `<ψ_0|U† O U|ψ_0>` from the dense total unitary.
    pub agnostic: f64,
    /// `<0|O_t|0>` from the evolved descriptors.
    pub heisenberg: f64,
    pub max_difference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Dense matrix of a Pauli sum over `layout`; qudit slots must carry `I`.
pub fn observable_matrix(f: &PauliSum, layout: &SystemLayout) -> Result<ComplexMatrix> {
    if f.n_qubits() != layout.len() {
        return Err(Error::WordLength {
            expected: layout.len(),
            found: f.n_qubits(),
        });
    }
    if layout.all_qubits() {
        return Ok(f.materialize());
    }
    let mut out = ComplexMatrix::zeros(layout.total_dim());
    for term in f.terms() {
        let mut m = ComplexMatrix::identity(1);
        for (s, &p) in term.word.letters().iter().enumerate() {
            let local = match p {
                Pauli::I => ComplexMatrix::identity(layout.dim(s)),
                _ if layout.is_qubit(s) => p.matrix(),
                _ => {
                    return Err(Error::NotAQubit {
                        system: s,
                        dim: layout.dim(s),
                    })
                }
            };
            m = m.kron(&local);
        }
        out.add_scaled(term.coeff * term.word.phase().value(), &m)?;
    }
    Ok(out)
}

/// Evaluates an observable in all three pictures after `circuit`.
///
/// The descriptor side runs gate by gate on all-qubit layouts and by one
/// global conjugation otherwise.
pub fn instrumental_equivalence_check(
    circuit: &Circuit,
    observable: &PauliSum,
    layout: &SystemLayout,
) -> Result<EquivalenceReport> {
    let o = observable_matrix(observable, layout)?;
    o.ensure_hermitian(tolerance::HERMITICITY)?;

    let schrodinger = born_expectation(&schrodinger_run(circuit, layout)?, &o)?;

    let u = circuit.unitary(layout)?;
    let psi0 = basis_vector(layout.total_dim(), 0);
    let heisenberg_op = conjugate(&u, &o)?;
    let agnostic = inner(&psi0, &heisenberg_op.apply(&psi0)?).re;

    let frame = if layout.all_qubits() {
        DescriptorFrame::new(layout.clone())?.run_steps(circuit, StepMode::ConjugateAll)?
    } else {
        DescriptorFrame::run_global(layout, circuit)?
    };
    let heisenberg = expectation(&frame, observable)?;

    let max_difference = (schrodinger - agnostic)
        .abs()
        .max((schrodinger - heisenberg).abs())
        .max((agnostic - heisenberg).abs());
    Ok(EquivalenceReport {
        schrodinger,
        agnostic,
        heisenberg,
        max_difference,
        tolerance: tolerance::EQUIVALENCE,
        pass: max_difference <= tolerance::EQUIVALENCE,
    })
}
