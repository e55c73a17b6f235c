//! Heisenberg-picture engine.
//!
//! A [`DescriptorFrame`] holds one [`Descriptor`] per subsystem together with
//! the fixed reference vector `|0…0>`. Evolution never touches the reference:
//! all dynamics live in the descriptor components.
//!
//! Two evolution routes are provided. [`DescriptorFrame::evolve_global`]
//! conjugates every component by a whole-space unitary. [`DescriptorFrame::evolve_step`]
//! rebuilds a gate from the current components of its target descriptors
//! through the gate's Pauli recipe and conjugates by that operator, so the
//! step only ever reads the targets' descriptors.

mod audit;
mod reconstruct;
mod snapshot;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use audit::{locality_audit, locality_audit_with, LocalityReport};
pub use reconstruct::{expectation, expectation_on, reconstruct_density, recover_unitary};
pub use snapshot::{ComponentSnapshot, ComponentValue, FrameSnapshot};

use crate::circuit::{Circuit, Instruction};
use crate::embed::tensor_embed;
use crate::error::{Error, Result};
use crate::functional::{pauli_eval, ComponentMap, QubitComponents};
use crate::gates::standard;
use crate::layout::SystemLayout;
use crate::linalg::{basis_vector, ComplexMatrix, C64};
use crate::pauli::{pauli_decompose, PauliSum};
use crate::tolerance;

/// Name of one descriptor component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentLabel {
    /// Qubit `σ_x` generator.
    X,
    /// Qubit `σ_z` generator.
    Z,
    /// Qudit matrix unit `|row><col|`.
    Unit { row: usize, col: usize },
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::X => f.write_str("x"),
            ComponentLabel::Z => f.write_str("z"),
            ComponentLabel::Unit { row, col } => write!(f, "E_{{{row},{col}}}"),
        }
    }
}

impl FromStr for ComponentLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(ComponentLabel::X),
            "z" => Ok(ComponentLabel::Z),
            _ => {
                let inner = s
                    .strip_prefix("E_{")
                    .and_then(|r| r.strip_suffix('}'))
                    .ok_or_else(|| Error::Parse(format!("unknown component label `{s}`")))?;
                let (row, col) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("unknown component label `{s}`")))?;
                let parse = |t: &str| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("unknown component label `{s}`")))
                };
                Ok(ComponentLabel::Unit {
                    row: parse(row)?,
                    col: parse(col)?,
                })
            }
        }
    }
}

/// One subsystem's evolving generator components.
#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor {
    system: usize,
    local_dim: usize,
    components: Vec<(ComponentLabel, ComplexMatrix)>,
}

impl Descriptor {
    /// Initial descriptor: the generators embedded on `system`.
    ///
    /// Qubits carry `(σ_x, σ_z)`; larger subsystems carry every matrix unit.
    pub fn initial(layout: &SystemLayout, system: usize) -> Result<Self> {
        layout.check_targets(&[system])?;
        let d = layout.dim(system);
        let locals: Vec<(ComponentLabel, ComplexMatrix)> = if d == 2 {
            vec![(ComponentLabel::X, standard::x()), (ComponentLabel::Z, standard::z())]
        } else {
            let mut v = Vec::with_capacity(d * d);
            for row in 0..d {
                for col in 0..d {
                    v.push((ComponentLabel::Unit { row, col }, ComplexMatrix::unit(d, row, col)));
                }
            }
            v
        };
        let components = locals
            .into_iter()
            .map(|(l, g)| tensor_embed(&g, &[system], layout).map(|m| (l, m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            system,
            local_dim: d,
            components,
        })
    }

    pub fn system(&self) -> usize {
        self.system
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn is_qubit(&self) -> bool {
        self.local_dim == 2
    }

    pub fn components(&self) -> &[(ComponentLabel, ComplexMatrix)] {
        &self.components
    }

    pub fn component(&self, label: ComponentLabel) -> Option<&ComplexMatrix> {
        self.components.iter().find(|(l, _)| *l == label).map(|(_, m)| m)
    }

    /// `x` component of a qubit descriptor.
    pub fn x(&self) -> Option<&ComplexMatrix> {
        self.component(ComponentLabel::X)
    }

    /// `z` component of a qubit descriptor.
    pub fn z(&self) -> Option<&ComplexMatrix> {
        self.component(ComponentLabel::Z)
    }

    pub(crate) fn qubit_components(&self) -> Option<QubitComponents<'_>> {
        Some(QubitComponents {
            x: self.x()?,
            z: self.z()?,
        })
    }

    /// Largest entrywise difference over all components.
    pub fn max_delta(&self, other: &Descriptor) -> Result<f64> {
        if self.components.len() != other.components.len() || self.system != other.system {
            return Err(Error::FrameMismatch(format!(
                "descriptors of subsystems {} and {} have different shapes",
                self.system, other.system
            )));
        }
        self.components
            .iter()
            .zip(&other.components)
            .try_fold(0.0f64, |acc, ((_, a), (_, b))| Ok(acc.max(a.max_abs_diff(b)?)))
    }

    fn map_components(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        Self {
            system: self.system,
            local_dim: self.local_dim,
            components: self.components.iter().map(|(l, m)| (*l, f(m))).collect(),
        }
    }
}

/// A gate occurrence together with its Pauli recipe over the target qubits.
///
/// Slot `k` of the recipe refers to `targets[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GateEvent {
    label: String,
    matrix: ComplexMatrix,
    targets: Vec<usize>,
    functional: PauliSum,
}

impl GateEvent {
    /// Decomposes a local gate on qubit targets into its recipe.
    pub fn from_matrix(label: impl Into<String>, matrix: ComplexMatrix, targets: Vec<usize>) -> Result<Self> {
        let functional = pauli_decompose(&matrix, targets.len())?;
        Ok(Self {
            label: label.into(),
            matrix,
            targets,
            functional,
        })
    }

    pub fn from_instruction(ins: &Instruction) -> Result<Self> {
        Self::from_matrix(ins.gate.label(), ins.gate.matrix(), ins.targets.clone())
    }

    /// Library gate by name.
    pub fn gate(name: &str, params: &[f64], targets: &[usize]) -> Result<Self> {
        let gate = crate::gates::Gate::new(name, params)?;
        Self::from_instruction(&Instruction::new(gate, targets.to_vec()))
    }

    /// Assembles an event from an externally supplied recipe.
    pub fn from_parts(label: impl Into<String>, matrix: ComplexMatrix, targets: Vec<usize>, functional: PauliSum) -> Self {
        Self {
            label: label.into(),
            matrix,
            targets,
            functional,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn functional(&self) -> &PauliSum {
        &self.functional
    }

    /// Max deviation between the recipe's matrix and the gate matrix on the targets.
    pub fn local_deviation(&self) -> Result<f64> {
        if self.functional.n_qubits() != self.targets.len() {
            return Err(Error::WordLength {
                expected: self.targets.len(),
                found: self.functional.n_qubits(),
            });
        }
        self.functional.materialize().max_abs_diff(&self.matrix)
    }

    /// Whole-space check: the recipe evaluated on initial descriptors against
    /// the embedded gate.
    pub fn defining_deviation(&self, layout: &SystemLayout) -> Result<f64> {
        let frame = DescriptorFrame::new(layout.clone())?;
        let built = frame.gate_operator(self)?;
        built.max_abs_diff(&tensor_embed(&self.matrix, &self.targets, layout)?)
    }
}

/// How [`DescriptorFrame::evolve_step_with`] treats descriptors outside the gate's targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMode {
    /// Conjugate every component of every descriptor by the rebuilt gate.
    ConjugateAll,
    /// Conjugate target descriptors; for every other component verify that it
    /// commutes with the rebuilt gate (within the locality tolerance) and then
    /// carry it over unchanged. A component that fails the check is conjugated.
    #[default]
    LocalReduction,
}

/// The Heisenberg-picture state of the whole network.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorFrame {
    layout: SystemLayout,
    reference: Vec<C64>,
    descriptors: Vec<Descriptor>,
    time: u64,
    cumulative: ComplexMatrix,
}

impl DescriptorFrame {
    /// Initial frame: generators embedded per subsystem, reference `|0…0>`.
    pub fn new(layout: SystemLayout) -> Result<Self> {
        let descriptors = (0..layout.len())
            .map(|s| Descriptor::initial(&layout, s))
            .collect::<Result<Vec<_>>>()?;
        let total = layout.total_dim();
        Ok(Self {
            reference: basis_vector(total, 0),
            cumulative: ComplexMatrix::identity(total),
            layout,
            descriptors,
            time: 0,
        })
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn reference(&self) -> &[C64] {
        &self.reference
    }

    pub fn descriptors(&self) -> &[Descriptor] {
        &self.descriptors
    }

    pub fn descriptor(&self, system: usize) -> &Descriptor {
        &self.descriptors[system]
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    /// Product of all unitaries applied so far.
    ///
    /// Bookkeeping for test oracles only; no descriptor operation reads it.
    pub fn cumulative(&self) -> &ComplexMatrix {
        &self.cumulative
    }

    /// `u† q u` for every component; the cumulative evolution becomes `cumulative · u`.
    pub fn evolve_global(&self, u: &ComplexMatrix) -> Result<Self> {
        self.evolve_global_with(u, tolerance::UNITARITY)
    }

    pub fn evolve_global_with(&self, u: &ComplexMatrix, unitarity_tol: f64) -> Result<Self> {
        let total = self.layout.total_dim();
        if u.dim() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: u.dim(),
            });
        }
        u.ensure_unitary(unitarity_tol)?;
        let ud = u.dagger();
        Ok(Self {
            layout: self.layout.clone(),
            reference: self.reference.clone(),
            descriptors: self
                .descriptors
                .iter()
                .map(|d| d.map_components(|m| ud.matmul_unchecked(&m.matmul_unchecked(u))))
                .collect(),
            time: self.time + 1,
            cumulative: self.cumulative.matmul_unchecked(u),
        })
    }

    /// Evaluates the event's recipe on the current target descriptors.
    pub fn gate_operator(&self, event: &GateEvent) -> Result<ComplexMatrix> {
        self.layout.check_targets(&event.targets)?;
        let mut slots = Vec::with_capacity(event.targets.len());
        for &t in &event.targets {
            let d = &self.descriptors[t];
            let comps = d.qubit_components().ok_or(Error::QuditStep {
                system: t,
                dim: d.local_dim,
            })?;
            slots.push(Some(comps));
        }
        let map = ComponentMap::with_dim(self.layout.total_dim(), slots)?;
        pauli_eval(&event.functional, &map)
    }

    /// Step evolution with [`StepMode::LocalReduction`].
    pub fn evolve_step(&self, event: &GateEvent) -> Result<Self> {
        self.evolve_step_with(event, StepMode::LocalReduction)
    }

    /// Rebuilds the gate from the target descriptors and conjugates by it.
    ///
    /// Round-off makes the rebuilt operator slightly non-unitary, and
    /// conjugating by a non-unitary operator amplifies the departure of the
    /// components from their algebraic relations at every step. The rebuilt
    /// operator is therefore refined to its unitary polar factor first; a
    /// departure larger than [`tolerance::DRIFT`] is reported as an error.
    pub fn evolve_step_with(&self, event: &GateEvent, mode: StepMode) -> Result<Self> {
        self.layout.check_targets(&event.targets)?;
        for &t in &event.targets {
            if !self.layout.is_qubit(t) {
                return Err(Error::QuditStep {
                    system: t,
                    dim: self.layout.dim(t),
                });
            }
        }
        let deviation = event.local_deviation()?;
        if deviation > tolerance::UNITARITY {
            return Err(Error::FunctionalMismatch { deviation });
        }
        let m = self.gate_operator(event)?;
        let deviation = m.unitarity_deviation();
        if deviation > tolerance::DRIFT {
            return Err(Error::NotUnitary { deviation });
        }
        let m = m.polar_refine(4.0 * f64::EPSILON, 3);
        let md = m.dagger();
        let descriptors = self
            .descriptors
            .iter()
            .map(|d| {
                let conjugate_all = mode == StepMode::ConjugateAll || event.targets.contains(&d.system);
                d.map_components(|q| {
                    let qm = q.matmul_unchecked(&m);
                    if !conjugate_all {
                        let mq = m.matmul_unchecked(q);
                        let commutes = qm.max_abs_diff(&mq).is_ok_and(|d| d <= tolerance::LOCALITY);
                        if commutes {
                            return q.clone();
                        }
                    }
                    md.matmul_unchecked(&qm)
                })
            })
            .collect();
        let embedded = tensor_embed(&event.matrix, &event.targets, &self.layout)?;
        Ok(Self {
            layout: self.layout.clone(),
            reference: self.reference.clone(),
            descriptors,
            time: self.time + 1,
            cumulative: embedded.matmul_unchecked(&self.cumulative),
        })
    }

    /// Runs a qubit circuit gate by gate through [`DescriptorFrame::evolve_step_with`].
    pub fn run_steps(&self, circuit: &Circuit, mode: StepMode) -> Result<Self> {
        let mut frame = self.clone();
        for ins in circuit.instructions() {
            frame = frame.evolve_step_with(&GateEvent::from_instruction(ins)?, mode)?;
        }
        Ok(frame)
    }

    /// Fresh frame evolved by the circuit's total unitary in one conjugation.
    /// Works for any layout, including qudits.
    pub fn run_global(layout: &SystemLayout, circuit: &Circuit) -> Result<Self> {
        Self::new(layout.clone())?.evolve_global(&circuit.unitary(layout)?)
    }

    /// Per-subsystem max-norm deltas against another frame of the same layout.
    pub fn subsystem_deltas(&self, other: &DescriptorFrame) -> Result<Vec<f64>> {
        if self.layout != other.layout {
            return Err(Error::FrameMismatch("layouts differ".into()));
        }
        self.descriptors
            .iter()
            .zip(&other.descriptors)
            .map(|(a, b)| a.max_delta(b))
            .collect()
    }

    /// Largest component delta against another frame.
    pub fn max_delta(&self, other: &DescriptorFrame) -> Result<f64> {
        Ok(self.subsystem_deltas(other)?.into_iter().fold(0.0, f64::max))
    }

    /// Max deviation from `x² = z² = 1` and `xz = −zx` over all qubit descriptors.
    pub fn pauli_relation_deviation(&self) -> f64 {
        let id = ComplexMatrix::identity(self.layout.total_dim());
        let mut dev: f64 = 0.0;
        for d in &self.descriptors {
            let Some(c) = d.qubit_components() else { continue };
            let xx = c.x.matmul_unchecked(c.x);
            let zz = c.z.matmul_unchecked(c.z);
            let xz = c.x.matmul_unchecked(c.z);
            let zx = c.z.matmul_unchecked(c.x);
            dev = dev
                .max(xx.max_abs_diff(&id).unwrap_or(f64::INFINITY))
                .max(zz.max_abs_diff(&id).unwrap_or(f64::INFINITY))
                .max((&xz + &zx).max_norm());
        }
        dev
    }

    /// Max commutator norm between components of distinct descriptors.
    pub fn cross_commutation_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for (i, a) in self.descriptors.iter().enumerate() {
            for b in &self.descriptors[i + 1..] {
                for (_, p) in &a.components {
                    for (_, q) in &b.components {
                        let c = &p.matmul_unchecked(q) - &q.matmul_unchecked(p);
                        dev = dev.max(c.max_norm());
                    }
                }
            }
        }
        dev
    }
}
