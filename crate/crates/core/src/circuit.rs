//! Circuits and the JSON circuit file format.
//!
//! ```json
//! {
//!   "qubits": 2,
//!   "dims": [2, 2],
//!   "gates": [
//!     {"name": "H", "targets": [0]},
//!     {"name": "CNOT", "targets": [0, 1]},
//!     {"name": "RZ", "targets": [1], "params": [0.25]}
//!   ]
//! }
//! ```
//!
//! `qubits` is the number of subsystems; `dims` is optional and defaults to
//! all twos. Gate names are case-insensitive and angles are in radians.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::embed::tensor_embed;
use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::layout::{SystemLayout, DEFAULT_MAX_DIM};
use crate::linalg::ComplexMatrix;

/// A library gate applied to ordered targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Instruction {
    pub gate: Gate,
    pub targets: Vec<usize>,
}

impl Instruction {
    pub fn new(gate: Gate, targets: Vec<usize>) -> Self {
        Self { gate, targets }
    }

    /// Checks targets against the layout and returns the local gate matrix.
    pub fn local_matrix(&self, layout: &SystemLayout) -> Result<ComplexMatrix> {
        layout.check_targets(&self.targets)?;
        let dims: Vec<usize> = self.targets.iter().map(|&t| layout.dim(t)).collect();
        self.gate.matrix_for(&dims)
    }

    /// Whole-space matrix of the instruction.
    pub fn embedded(&self, layout: &SystemLayout) -> Result<ComplexMatrix> {
        tensor_embed(&self.local_matrix(layout)?, &self.targets, layout)
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts: Vec<String> = self.targets.iter().map(|t| t.to_string()).collect();
        write!(f, "{} [{}]", self.gate, ts.join(","))
    }
}

/// An ordered list of instructions, applied first to last.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_instructions(instructions: Vec<Instruction>) -> Self {
        Self { instructions }
    }

    /// Appends a library gate by name.
    pub fn push(&mut self, name: &str, params: &[f64], targets: &[usize]) -> Result<&mut Self> {
        self.instructions.push(Instruction::new(Gate::new(name, params)?, targets.to_vec()));
        Ok(self)
    }

    /// Builder form of [`Circuit::push`].
    pub fn with(mut self, name: &str, params: &[f64], targets: &[usize]) -> Result<Self> {
        self.push(name, params, targets)?;
        Ok(self)
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn validate(&self, layout: &SystemLayout) -> Result<()> {
        for ins in &self.instructions {
            ins.local_matrix(layout)?;
        }
        Ok(())
    }

    /// Total evolution `G_T ⋯ G_2 G_1`.
    pub fn unitary(&self, layout: &SystemLayout) -> Result<ComplexMatrix> {
        let mut u = ComplexMatrix::identity(layout.total_dim());
        for ins in &self.instructions {
            u = ins.embedded(layout)?.matmul(&u)?;
        }
        Ok(u)
    }
}

/// One gate entry of a circuit file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateEntry {
    pub name: String,
    pub targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
}

/// The on-disk circuit description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(default)]
    pub gates: Vec<GateEntry>,
}

/// A circuit-file error annotated with its source position.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitParseError {
    pub message: String,
    /// 1-based line, when the error has a source position.
    pub line: Option<usize>,
    /// 1-based column, when the error has a source position.
    pub column: Option<usize>,
    /// 0-based byte offset, when the error has a source position.
    pub byte_offset: Option<usize>,
    /// Index into `gates`, for semantic errors in a gate entry.
    pub gate_index: Option<usize>,
}

impl fmt::Display for CircuitParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column, self.byte_offset, self.gate_index) {
            (Some(l), Some(c), Some(b), _) => {
                write!(f, "line {l}, column {c} (byte offset {b}): {}", self.message)
            }
            (_, _, _, Some(g)) => write!(f, "gates[{g}]: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for CircuitParseError {}

impl CircuitParseError {
    fn semantic(gate_index: Option<usize>, message: String) -> Self {
        Self {
            message,
            line: None,
            column: None,
            byte_offset: None,
            gate_index,
        }
    }
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    // serde_json columns count bytes within the line; column 0 means "before the line".
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

impl CircuitFile {
    /// Parses the JSON text, reporting syntax and schema errors with their position.
    pub fn parse(text: &str) -> std::result::Result<Self, CircuitParseError> {
        serde_json::from_str(text).map_err(|e| {
            let (line, column) = (e.line(), e.column());
            CircuitParseError {
                message: e.to_string(),
                line: Some(line),
                column: Some(column),
                byte_offset: Some(byte_offset(text, line, column)),
                gate_index: None,
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit files always serialize")
    }

    pub fn dims(&self) -> Vec<usize> {
        self.dims.clone().unwrap_or_else(|| vec![2; self.qubits])
    }

    pub fn layout(&self) -> std::result::Result<SystemLayout, CircuitParseError> {
        self.layout_with_cap(DEFAULT_MAX_DIM)
    }

    pub fn layout_with_cap(&self, cap: usize) -> std::result::Result<SystemLayout, CircuitParseError> {
        let dims = self.dims();
        if dims.len() != self.qubits {
            return Err(CircuitParseError::semantic(
                None,
                format!("`dims` lists {} subsystems but `qubits` is {}", dims.len(), self.qubits),
            ));
        }
        SystemLayout::with_cap(dims, cap).map_err(|e| CircuitParseError::semantic(None, e.to_string()))
    }

    /// Converts the entries into a circuit validated against `layout`.
    pub fn circuit(&self, layout: &SystemLayout) -> std::result::Result<Circuit, CircuitParseError> {
        let mut instructions = Vec::with_capacity(self.gates.len());
        for (k, entry) in self.gates.iter().enumerate() {
            let ins = Gate::new(&entry.name, &entry.params)
                .map(|g| Instruction::new(g, entry.targets.clone()))
                .and_then(|ins| ins.local_matrix(layout).map(|_| ins))
                .map_err(|e| CircuitParseError::semantic(Some(k), e.to_string()))?;
            instructions.push(ins);
        }
        Ok(Circuit::from_instructions(instructions))
    }

    /// Builds a file from a circuit and layout.
    pub fn from_circuit(circuit: &Circuit, layout: &SystemLayout) -> Self {
        let dims = (!layout.all_qubits()).then(|| layout.dims().to_vec());
        Self {
            qubits: layout.len(),
            dims,
            gates: circuit
                .instructions()
                .iter()
                .map(|ins| GateEntry {
                    name: ins.gate.kind().name().to_string(),
                    targets: ins.targets.clone(),
                    params: ins.gate.params().to_vec(),
                })
                .collect(),
        }
    }
}

impl From<CircuitParseError> for Error {
    fn from(e: CircuitParseError) -> Self {
        Error::Parse(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    const BELL: &str = r#"{
  "qubits": 2,
  "gates": [
    {"name": "h", "targets": [0]},
    {"name": "CNOT", "targets": [0, 1]}
  ]
}"#;

    #[test]
    fn parses_bell() {
        let f = CircuitFile::parse(BELL).unwrap();
        let layout = f.layout().unwrap();
        let c = f.circuit(&layout).unwrap();
        assert_eq!(c.len(), 2);
        let u = c.unitary(&layout).unwrap();
        let psi = u.column(0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(s, 0.0)];
        for (a, b) in psi.iter().zip(&expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let text = "{\n  \"qubits\": 2,\n  \"gates\": [ {\"name\": \"H\" \"targets\": [0]} ]\n}";
        let err = CircuitFile::parse(text).unwrap_err();
        assert_eq!(err.line, Some(3));
        let offset = err.byte_offset.unwrap();
        assert_eq!(&text[offset..offset + 1], "\"");
        assert!(err.to_string().starts_with("line 3, column"));
    }

    #[test]
    fn semantic_errors_name_the_gate() {
        let text = r#"{"qubits": 2, "gates": [{"name":"H","targets":[0]},{"name":"CZ","targets":[0,2]}]}"#;
        let f = CircuitFile::parse(text).unwrap();
        let err = f.circuit(&f.layout().unwrap()).unwrap_err();
        assert_eq!(err.gate_index, Some(1));
        let text = r#"{"qubits": 1, "gates": [{"name":"FOO","targets":[0]}]}"#;
        let f = CircuitFile::parse(text).unwrap();
        assert!(f.circuit(&f.layout().unwrap()).unwrap_err().message.contains("unknown gate"));
    }

    #[test]
    fn dims_must_match_qubits() {
        let f = CircuitFile::parse(r#"{"qubits": 2, "dims": [2]}"#).unwrap();
        assert!(f.layout().is_err());
        let f = CircuitFile::parse(r#"{"qubits": 2, "dims": [2, 3], "gates": [{"name":"fourier","targets":[1]}]}"#).unwrap();
        let layout = f.layout().unwrap();
        assert_eq!(layout.total_dim(), 6);
        assert!(f.circuit(&layout).is_ok());
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(CircuitFile::parse(r#"{"qubits": 1, "gatez": []}"#).is_err());
    }

    #[test]
    fn roundtrip_through_text() {
        let f = CircuitFile::parse(BELL).unwrap();
        let again = CircuitFile::parse(&f.to_json()).unwrap();
        assert_eq!(f, again);
    }
}
