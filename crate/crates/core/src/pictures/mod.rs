//! The Schrödinger picture as an independent oracle, and the checks that
//! relate it to the descriptor engine.

mod equivalence;
mod noumenal;

pub use equivalence::{instrumental_equivalence_check, observable_matrix, EquivalenceReport};
pub use noumenal::{
    compare_circuits, noninjectivity_witness, noumenal_class_report, same_noumenal_class, CircuitComparison,
    NoumenalClassQuery, NoumenalClassReport, Witness,
};

use crate::circuit::Circuit;
use crate::embed::apply_local;
use crate::error::{Error, Result};
use crate::layout::SystemLayout;
use crate::linalg::{basis_vector, inner, norm, ComplexMatrix, C64};
use crate::tolerance;

/// A normalized state vector over a layout.
#[derive(Debug, Clone, PartialEq)]
pub struct SchrodingerState {
    layout: SystemLayout,
    amplitudes: Vec<C64>,
}

impl SchrodingerState {
    /// `|0…0>`.
    pub fn new(layout: SystemLayout) -> Self {
        let amplitudes = basis_vector(layout.total_dim(), 0);
        Self { layout, amplitudes }
    }

    pub fn from_amplitudes(layout: SystemLayout, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.total_dim(),
                found: amplitudes.len(),
            });
        }
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > tolerance::UNITARITY {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self { layout, amplitudes })
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// Applies a local unitary on `targets`.
    pub fn apply(&mut self, op: &ComplexMatrix, targets: &[usize]) -> Result<()> {
        op.ensure_unitary(tolerance::UNITARITY)?;
        apply_local(op, targets, &self.layout, &mut self.amplitudes)
    }

    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        for ins in circuit.instructions() {
            let m = ins.local_matrix(&self.layout)?;
            apply_local(&m, &ins.targets, &self.layout, &mut self.amplitudes)?;
        }
        Ok(())
    }

    /// `|ψ><ψ|`.
    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes).expect("equal lengths")
    }

    /// Reduced density of `subset` by partial trace, basis ordered by `subset`.
    pub fn reduced_density(&self, subset: &[usize]) -> Result<ComplexMatrix> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.layout.check_targets(subset)?;
        let local = crate::embed::offsets(&self.layout, subset);
        let rest = crate::embed::offsets(&self.layout, &self.layout.complement(subset));
        let k = local.len();
        let mut rho = ComplexMatrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                let v: C64 = rest
                    .iter()
                    .map(|&r| self.amplitudes[r + local[i]] * self.amplitudes[r + local[j]].conj())
                    .sum();
                rho.set(i, j, v);
            }
        }
        Ok(rho)
    }
}

/// Runs `circuit` on `|0…0>`.
pub fn schrodinger_run(circuit: &Circuit, layout: &SystemLayout) -> Result<SchrodingerState> {
    let mut state = SchrodingerState::new(layout.clone());
    state.run(circuit)?;
    Ok(state)
}

/// `<ψ|O|ψ>` for a Hermitian `O`.
pub fn born_expectation(state: &SchrodingerState, observable: &ComplexMatrix) -> Result<f64> {
    if observable.dim() != state.amplitudes.len() {
        return Err(Error::DimensionMismatch {
            expected: state.amplitudes.len(),
            found: observable.dim(),
        });
    }
    observable.ensure_hermitian(tolerance::HERMITICITY)?;
    Ok(inner(&state.amplitudes, &observable.apply_unchecked(&state.amplitudes)).re)
}

/// True iff the states agree up to a global phase: `|<a|b>| ≥ 1 − 1e-10`.
/// States over different layouts are never equal.
pub fn projective_equal(a: &SchrodingerState, b: &SchrodingerState) -> bool {
    a.layout == b.layout && inner(&a.amplitudes, &b.amplitudes).norm() >= 1.0 - tolerance::PROJECTIVE
}
