//! JSON snapshots of descriptor frames.
//!
//! A component is written in Pauli text form when the layout is all qubits
//! and the decomposition reproduces the component exactly (signed zeros aside)
//! with at most 4096 terms; otherwise it is written densely as row-major
//! `[re, im]` pairs. Dense entries round-trip bit for bit.

use serde::{Deserialize, Serialize};

use super::{ComponentLabel, Descriptor, DescriptorFrame};
use crate::error::{Error, Result};
use crate::layout::SystemLayout;
use crate::linalg::{norm, ComplexMatrix, C64};
use crate::pauli::{pauli_decompose, PauliSum};

pub const SNAPSHOT_FORMAT: &str = "descriptor-frame/v1";
const MAX_PAULI_TERMS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentValue {
    Pauli(PauliSum),
    Dense(ComplexMatrix),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentSnapshot {
    pub system: usize,
    pub label: String,
    pub value: ComponentValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameSnapshot {
    pub format: String,
    pub layout: Vec<usize>,
    pub time: u64,
    pub reference: Vec<[f64; 2]>,
    pub components: Vec<ComponentSnapshot>,
    /// Cumulative unitary, kept so imported frames stay usable as oracles.
    pub cumulative: ComplexMatrix,
}

fn encode(m: &ComplexMatrix, n_qubits: Option<usize>) -> ComponentValue {
    if let Some(n) = n_qubits.filter(|&n| n <= 6) {
        if let Ok(sum) = pauli_decompose(m, n) {
            if sum.len() <= MAX_PAULI_TERMS && exactly_equal(&sum.materialize(), m) {
                return ComponentValue::Pauli(sum);
            }
        }
    }
    ComponentValue::Dense(m.clone())
}

fn exactly_equal(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
    a.dim() == b.dim() && a == b
}

impl DescriptorFrame {
    pub fn to_snapshot(&self) -> FrameSnapshot {
        let n_qubits = self.layout.all_qubits().then(|| self.layout.len());
        let components = self
            .descriptors
            .iter()
            .flat_map(|d| {
                d.components.iter().map(move |(label, m)| ComponentSnapshot {
                    system: d.system,
                    label: label.to_string(),
                    value: encode(m, n_qubits),
                })
            })
            .collect();
        FrameSnapshot {
            format: SNAPSHOT_FORMAT.to_string(),
            layout: self.layout.dims().to_vec(),
            time: self.time,
            reference: self.reference.iter().map(|c| [c.re, c.im]).collect(),
            components,
            cumulative: self.cumulative.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_snapshot()).expect("snapshots always serialize")
    }

    pub fn from_snapshot(s: &FrameSnapshot) -> Result<Self> {
        if s.format != SNAPSHOT_FORMAT {
            return Err(Error::Parse(format!("unsupported snapshot format `{}`", s.format)));
        }
        let layout = SystemLayout::new(s.layout.clone())?;
        let total = layout.total_dim();
        let reference: Vec<C64> = s.reference.iter().map(|&[re, im]| C64::new(re, im)).collect();
        if reference.len() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: reference.len(),
            });
        }
        let n = norm(&reference);
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm: n });
        }
        if s.cumulative.dim() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: s.cumulative.dim(),
            });
        }

        let mut descriptors = Vec::with_capacity(layout.len());
        let mut entries = s.components.iter();
        for system in 0..layout.len() {
            let template = Descriptor::initial(&layout, system)?;
            let mut components = Vec::with_capacity(template.components.len());
            for (label, _) in &template.components {
                let entry = entries
                    .next()
                    .ok_or_else(|| Error::Parse(format!("missing component {label} of subsystem {system}")))?;
                let parsed: ComponentLabel = entry.label.parse()?;
                if entry.system != system || parsed != *label {
                    return Err(Error::Parse(format!(
                        "expected component {label} of subsystem {system}, found {} of subsystem {}",
                        entry.label, entry.system
                    )));
                }
                let m = match &entry.value {
                    ComponentValue::Dense(m) => m.clone(),
                    ComponentValue::Pauli(p) => p.materialize(),
                };
                if m.dim() != total {
                    return Err(Error::DimensionMismatch {
                        expected: total,
                        found: m.dim(),
                    });
                }
                components.push((*label, m));
            }
            descriptors.push(Descriptor {
                system,
                local_dim: template.local_dim,
                components,
            });
        }
        if entries.next().is_some() {
            return Err(Error::Parse("snapshot lists more components than the layout has".into()));
        }
        Ok(Self {
            layout,
            reference,
            descriptors,
            time: s.time,
            cumulative: s.cumulative.clone(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: FrameSnapshot = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_snapshot(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;
    use crate::descriptors::StepMode;

    fn bits(f: &DescriptorFrame) -> Vec<u64> {
        f.descriptors()
            .iter()
            .flat_map(|d| d.components().iter().flat_map(|(_, m)| m.to_dense()))
            .flat_map(|c| [c.re.to_bits(), c.im.to_bits()])
            .collect()
    }

    #[test]
    fn clifford_frames_use_pauli_form() {
        let c = Circuit::new().with("H", &[], &[0]).unwrap().with("CNOT", &[], &[0, 1]).unwrap();
        let f = DescriptorFrame::new(SystemLayout::qubits(2).unwrap())
            .unwrap()
            .run_steps(&c, StepMode::ConjugateAll)
            .unwrap();
        let back = DescriptorFrame::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let fresh = DescriptorFrame::new(SystemLayout::qubits(2).unwrap()).unwrap().to_snapshot();
        assert!(fresh.components.iter().all(|c| matches!(c.value, ComponentValue::Pauli(_))));
    }

    #[test]
    fn dense_roundtrip_is_bit_exact() {
        let layout = SystemLayout::new(vec![2, 3]).unwrap();
        let c = Circuit::new()
            .with("RY", &[0.123], &[0])
            .unwrap()
            .with("FOURIER", &[], &[1])
            .unwrap()
            .with("T", &[], &[0])
            .unwrap();
        let f = DescriptorFrame::run_global(&layout, &c).unwrap();
        let snap = f.to_snapshot();
        assert!(snap.components.iter().all(|c| matches!(c.value, ComponentValue::Dense(_))));
        let back = DescriptorFrame::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(bits(&back), bits(&f));
    }

    #[test]
    fn rejects_malformed_snapshots() {
        let f = DescriptorFrame::new(SystemLayout::qubits(1).unwrap()).unwrap();
        let mut s = f.to_snapshot();
        s.components.pop();
        assert!(DescriptorFrame::from_snapshot(&s).is_err());
        let mut s = f.to_snapshot();
        s.format = "v0".into();
        assert!(DescriptorFrame::from_snapshot(&s).is_err());
        let mut s = f.to_snapshot();
        s.reference[0] = [2.0, 0.0];
        assert!(matches!(DescriptorFrame::from_snapshot(&s), Err(Error::NotNormalized { .. })));
    }
}
