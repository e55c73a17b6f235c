use serde::{Deserialize, Serialize};

use super::{projective_equal, schrodinger_run};
use crate::circuit::Circuit;
use crate::descriptors::{Descriptor, DescriptorFrame};
use crate::error::{Error, Result};
use crate::layout::SystemLayout;
use crate::linalg::{inner, ComplexMatrix};
use crate::tolerance;

/// Largest total dimension for which the direct factorization criterion is also evaluated.
const FACTORIZATION_MAX_DIM: usize = 64;

/// Do `u` and `u_prime` leave `system` in the same noumenal state?
#[derive(Debug, Clone, PartialEq)]
pub struct NoumenalClassQuery {
    pub layout: SystemLayout,
    pub u: ComplexMatrix,
    pub u_prime: ComplexMatrix,
    pub system: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoumenalClassReport {
    pub system: usize,
    /// Max-norm difference between the two evolved descriptors of `system`.
    pub descriptor_delta: f64,
    pub tolerance: f64,
    pub same_class: bool,
    /// `max ‖D† q D − q‖` over the initial components of `system`, with
    /// `D = u_prime · u†`; zero iff `D` is the identity on `system` tensored
    /// with something on the rest. Only computed for small spaces.
    pub factorization_deviation: Option<f64>,
    /// Whether the direct criterion agrees with the descriptor comparison.
    pub consistent: bool,
}

fn validate(q: &NoumenalClassQuery) -> Result<()> {
    let total = q.layout.total_dim();
    for m in [&q.u, &q.u_prime] {
        if m.dim() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: m.dim(),
            });
        }
        m.ensure_unitary(tolerance::UNITARITY)?;
    }
    q.layout.check_targets(&[q.system])
}

/// Compares the descriptors of `query.system` evolved by both unitaries and,
/// for small spaces, cross-checks with the factorization criterion.
pub fn noumenal_class_report(query: &NoumenalClassQuery) -> Result<NoumenalClassReport> {
    validate(query)?;
    let initial = Descriptor::initial(&query.layout, query.system)?;
    let (ud, upd) = (query.u.dagger(), query.u_prime.dagger());
    let mut delta: f64 = 0.0;
    for (_, q) in initial.components() {
        let a = ud.matmul_unchecked(&q.matmul_unchecked(&query.u));
        let b = upd.matmul_unchecked(&q.matmul_unchecked(&query.u_prime));
        delta = delta.max(a.max_abs_diff(&b)?);
    }
    let same_class = delta <= tolerance::NOUMENAL;

    let factorization_deviation = (query.layout.total_dim() <= FACTORIZATION_MAX_DIM).then(|| {
        let d = query.u_prime.matmul_unchecked(&ud);
        let dd = d.dagger();
        initial
            .components()
            .iter()
            .map(|(_, q)| {
                dd.matmul_unchecked(&q.matmul_unchecked(&d))
                    .max_abs_diff(q)
                    .expect("same dimension")
            })
            .fold(0.0, f64::max)
    });
    let consistent = factorization_deviation.is_none_or(|dev| (dev <= tolerance::NOUMENAL) == same_class);
    Ok(NoumenalClassReport {
        system: query.system,
        descriptor_delta: delta,
        tolerance: tolerance::NOUMENAL,
        same_class,
        factorization_deviation,
        consistent,
    })
}

pub fn same_noumenal_class(query: &NoumenalClassQuery) -> Result<bool> {
    Ok(noumenal_class_report(query)?.same_class)
}

/// How two circuits compare as states and as descriptor frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitComparison {
    /// `|<ψ_a|ψ_b>|`.
    pub state_overlap: f64,
    /// `1 − |<ψ_a|ψ_b>|`.
    pub state_distance: f64,
    pub projectively_equal: bool,
    pub descriptor_delta: f64,
    pub descriptors_equal: bool,
}

impl CircuitComparison {
    /// Equal descriptors with different states would contradict the
    /// descriptor-to-state map being a function.
    pub fn is_counterexample(&self) -> bool {
        self.descriptors_equal && !self.projectively_equal
    }

    /// Equal states carried by different descriptors.
    pub fn is_witness(&self) -> bool {
        self.projectively_equal && !self.descriptors_equal
    }
}

pub fn compare_circuits(a: &Circuit, b: &Circuit, layout: &SystemLayout) -> Result<CircuitComparison> {
    let (sa, sb) = (schrodinger_run(a, layout)?, schrodinger_run(b, layout)?);
    let overlap = inner(sa.amplitudes(), sb.amplitudes()).norm();
    let fa = DescriptorFrame::run_global(layout, a)?;
    let fb = DescriptorFrame::run_global(layout, b)?;
    let delta = fa.max_delta(&fb)?;
    Ok(CircuitComparison {
        state_overlap: overlap,
        state_distance: (1.0 - overlap).max(0.0),
        projectively_equal: projective_equal(&sa, &sb),
        descriptor_delta: delta,
        descriptors_equal: delta <= tolerance::LOCALITY,
    })
}

/// Two circuits with the same projective state and different descriptors.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub circuit_a: Circuit,
    pub circuit_b: Circuit,
    pub comparison: CircuitComparison,
}

/// The empty circuit against a single `CZ(0,1)`: both leave `|0…0>` fixed,
/// but `CZ` turns `x_0 = σx⊗1` into `σx⊗σz`.
pub fn noninjectivity_witness(layout: &SystemLayout) -> Result<Witness> {
    if layout.len() < 2 {
        return Err(Error::InvalidArgument("the witness needs at least two subsystems".into()));
    }
    for s in [0, 1] {
        if !layout.is_qubit(s) {
            return Err(Error::NotAQubit {
                system: s,
                dim: layout.dim(s),
            });
        }
    }
    let circuit_a = Circuit::new();
    let circuit_b = Circuit::new().with("CZ", &[], &[0, 1])?;
    let comparison = compare_circuits(&circuit_a, &circuit_b, layout)?;
    Ok(Witness {
        circuit_a,
        circuit_b,
        comparison,
    })
}
