//! Gate library.
//!
//! Qubit gates use the computational basis with the first target as the most
//! significant bit: `CNOT` on `[c, t]` flips `t` when `c` is set. The three
//! qudit gates (`SHIFT`, `CLOCK`, `FOURIER`) take their dimension from the
//! target subsystem.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64, I, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Id,
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    U3,
    GlobalPhase,
    Cnot,
    Cz,
    Swap,
    CPhase,
    Shift,
    Clock,
    Fourier,
}

impl GateKind {
    pub const ALL: [GateKind; 21] = [
        GateKind::Id,
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
        GateKind::U3,
        GateKind::GlobalPhase,
        GateKind::Cnot,
        GateKind::Cz,
        GateKind::Swap,
        GateKind::CPhase,
        GateKind::Shift,
        GateKind::Clock,
        GateKind::Fourier,
    ];

    /// Case-insensitive lookup, including common aliases (`CX`, `CP`, `PHASE`).
    pub fn from_name(name: &str) -> Result<Self> {
        let kind = match name.to_ascii_uppercase().as_str() {
            "I" | "ID" => GateKind::Id,
            "H" => GateKind::H,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "S" => GateKind::S,
            "SDG" => GateKind::Sdg,
            "T" => GateKind::T,
            "TDG" => GateKind::Tdg,
            "RX" => GateKind::Rx,
            "RY" => GateKind::Ry,
            "RZ" => GateKind::Rz,
            "U3" | "U" => GateKind::U3,
            "GPHASE" => GateKind::GlobalPhase,
            "CNOT" | "CX" => GateKind::Cnot,
            "CZ" => GateKind::Cz,
            "SWAP" => GateKind::Swap,
            "CPHASE" | "CP" | "PHASE" => GateKind::CPhase,
            "SHIFT" => GateKind::Shift,
            "CLOCK" => GateKind::Clock,
            "FOURIER" => GateKind::Fourier,
            _ => return Err(Error::UnknownGate(name.to_string())),
        };
        Ok(kind)
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Id => "I",
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::U3 => "U3",
            GateKind::GlobalPhase => "GPHASE",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Swap => "SWAP",
            GateKind::CPhase => "CPHASE",
            GateKind::Shift => "SHIFT",
            GateKind::Clock => "CLOCK",
            GateKind::Fourier => "FOURIER",
        }
    }

    /// Number of real angle parameters.
    pub fn param_count(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::GlobalPhase | GateKind::CPhase => 1,
            GateKind::U3 => 3,
            _ => 0,
        }
    }

    /// Number of subsystems acted upon.
    pub fn target_count(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz | GateKind::Swap | GateKind::CPhase => 2,
            _ => 1,
        }
    }

    /// Whether the gate is defined for any subsystem dimension.
    pub fn is_qudit(self) -> bool {
        matches!(self, GateKind::Shift | GateKind::Clock | GateKind::Fourier)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A library gate with its angle parameters (radians).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GateRepr", into = "GateRepr")]
pub struct Gate {
    kind: GateKind,
    params: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct GateRepr {
    name: String,
    #[serde(default)]
    params: Vec<f64>,
}

impl TryFrom<GateRepr> for Gate {
    type Error = Error;

    fn try_from(r: GateRepr) -> Result<Self> {
        Gate::new(&r.name, &r.params)
    }
}

impl From<Gate> for GateRepr {
    fn from(g: Gate) -> Self {
        GateRepr {
            name: g.kind.name().to_string(),
            params: g.params,
        }
    }
}

impl Gate {
    pub fn new(name: &str, params: &[f64]) -> Result<Self> {
        Self::from_kind(GateKind::from_name(name)?, params)
    }

    pub fn from_kind(kind: GateKind, params: &[f64]) -> Result<Self> {
        if params.len() != kind.param_count() {
            return Err(Error::GateArity {
                gate: kind.name().to_string(),
                expected: kind.param_count(),
                found: params.len(),
            });
        }
        if let Some(p) = params.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument(format!("gate angle {p} is not finite")));
        }
        Ok(Self {
            kind,
            params: params.to_vec(),
        })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// Short label such as `RZ(0.785398)`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.kind.name().to_string()
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| format!("{p:.6}")).collect();
            format!("{}({})", self.kind.name(), ps.join(","))
        }
    }

    /// Matrix on qubit targets (qudit gates at dimension 2).
    pub fn matrix(&self) -> ComplexMatrix {
        self.matrix_for(&vec![2; self.kind.target_count()])
            .expect("qubit dimensions are valid for every library gate")
    }

    /// Matrix for targets of the given dimensions.
    pub fn matrix_for(&self, target_dims: &[usize]) -> Result<ComplexMatrix> {
        let k = self.kind;
        if target_dims.len() != k.target_count() {
            return Err(Error::TargetCount {
                gate: k.name().to_string(),
                expected: k.target_count(),
                found: target_dims.len(),
            });
        }
        if k.is_qudit() {
            let d = target_dims[0];
            return Ok(match k {
                GateKind::Shift => shift(d),
                GateKind::Clock => clock(d),
                _ => fourier(d),
            });
        }
        if let Some(&d) = target_dims.iter().find(|&&d| d != 2) {
            return Err(Error::InvalidArgument(format!(
                "gate {} acts on qubits, target has dimension {d}",
                k.name()
            )));
        }
        let p = &self.params;
        Ok(match k {
            GateKind::Id => ComplexMatrix::identity(2),
            GateKind::H => standard::h(),
            GateKind::X => standard::x(),
            GateKind::Y => standard::y(),
            GateKind::Z => standard::z(),
            GateKind::S => ComplexMatrix::diagonal(&[ONE, I]),
            GateKind::Sdg => ComplexMatrix::diagonal(&[ONE, -I]),
            GateKind::T => ComplexMatrix::diagonal(&[ONE, C64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]),
            GateKind::Tdg => ComplexMatrix::diagonal(&[ONE, C64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)]),
            GateKind::Rx => rx(p[0]),
            GateKind::Ry => ry(p[0]),
            GateKind::Rz => rz(p[0]),
            GateKind::U3 => u3(p[0], p[1], p[2]),
            GateKind::GlobalPhase => ComplexMatrix::identity(2).scale(C64::from_polar(1.0, p[0])),
            GateKind::Cnot => permutation(&[0, 1, 3, 2]),
            GateKind::Cz => ComplexMatrix::diagonal(&[ONE, ONE, ONE, -ONE]),
            GateKind::Swap => permutation(&[0, 2, 1, 3]),
            GateKind::CPhase => ComplexMatrix::diagonal(&[ONE, ONE, ONE, C64::from_polar(1.0, p[0])]),
            GateKind::Shift | GateKind::Clock | GateKind::Fourier => unreachable!(),
        })
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Standard matrix of a library gate on qubits.
pub fn gate(name: &str, params: &[f64]) -> Result<ComplexMatrix> {
    Ok(Gate::new(name, params)?.matrix())
}

/// Single-qubit matrices used throughout the crate.
pub mod standard {
    use super::*;

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, vec![ZERO, ONE, ONE, ZERO]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, vec![ZERO, -I, I, ZERO]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[ONE, -ONE])
    }

    pub fn h() -> ComplexMatrix {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        ComplexMatrix::from_vec(2, vec![s, s, s, -s]).unwrap()
    }
}

fn rx(theta: f64) -> ComplexMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    ComplexMatrix::from_vec(2, vec![C64::new(c, 0.0), C64::new(0.0, -s), C64::new(0.0, -s), C64::new(c, 0.0)]).unwrap()
}

fn ry(theta: f64) -> ComplexMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    ComplexMatrix::from_vec(2, vec![C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0)]).unwrap()
}

fn rz(theta: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[C64::from_polar(1.0, -theta / 2.0), C64::from_polar(1.0, theta / 2.0)])
}

/// `U3(θ, φ, λ)|0> = cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.
fn u3(theta: f64, phi: f64, lambda: f64) -> ComplexMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    ComplexMatrix::from_vec(
        2,
        vec![
            C64::new(c, 0.0),
            -C64::from_polar(s, lambda),
            C64::from_polar(s, phi),
            C64::from_polar(c, phi + lambda),
        ],
    )
    .unwrap()
}

/// Column `j` has its single one in row `image[j]`.
fn permutation(image: &[usize]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(image.len());
    for (j, &i) in image.iter().enumerate() {
        m.set(i, j, ONE);
    }
    m
}

/// `|k> -> |k+1 mod d>`.
fn shift(d: usize) -> ComplexMatrix {
    let image: Vec<usize> = (0..d).map(|k| (k + 1) % d).collect();
    permutation(&image)
}

/// `|k> -> ω^k |k>` with `ω = e^{2πi/d}`.
fn clock(d: usize) -> ComplexMatrix {
    let entries: Vec<C64> = (0..d)
        .map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    ComplexMatrix::diagonal(&entries)
}

fn fourier(d: usize) -> ComplexMatrix {
    let norm = 1.0 / (d as f64).sqrt();
    let mut m = ComplexMatrix::zeros(d);
    for j in 0..d {
        for k in 0..d {
            let angle = 2.0 * std::f64::consts::PI * ((j * k) % d) as f64 / d as f64;
            m.set(j, k, C64::from_polar(norm, angle));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn z_is_diag() {
        assert_eq!(gate("Z", &[]).unwrap(), ComplexMatrix::diagonal(&[ONE, -ONE]));
    }

    #[test]
    fn rz_pi() {
        let m = gate("rz", &[PI]).unwrap();
        let expected = ComplexMatrix::diagonal(&[C64::from_polar(1.0, -PI / 2.0), C64::from_polar(1.0, PI / 2.0)]);
        assert!(m.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn cnot_is_involution() {
        let c = gate("CNOT", &[]).unwrap();
        assert_eq!(&c * &c, ComplexMatrix::identity(4));
        assert_eq!(gate("cx", &[]).unwrap(), c);
    }

    #[test]
    fn every_gate_is_unitary() {
        for kind in GateKind::ALL {
            let params: Vec<f64> = (0..kind.param_count()).map(|k| 0.37 + k as f64).collect();
            let g = Gate::from_kind(kind, &params).unwrap();
            assert!(g.matrix().is_unitary(1e-10), "{kind} not unitary");
            if kind.is_qudit() {
                for d in 3..6 {
                    assert!(g.matrix_for(&[d]).unwrap().is_unitary(1e-10), "{kind} d={d}");
                }
            }
        }
    }

    #[test]
    fn u3_prepares_requested_state() {
        let m = gate("U3", &[1.2, 0.4, 0.0]).unwrap();
        assert!((m.get(0, 0) - C64::new(0.6f64.cos(), 0.0)).norm() < 1e-15);
        assert!((m.get(1, 0) - C64::from_polar(0.6f64.sin(), 0.4)).norm() < 1e-15);
    }

    #[test]
    fn errors() {
        assert_eq!(gate("FOO", &[]).unwrap_err(), Error::UnknownGate("FOO".into()));
        assert!(matches!(
            gate("RX", &[]),
            Err(Error::GateArity { expected: 1, found: 0, .. })
        ));
        let g = Gate::new("H", &[]).unwrap();
        assert!(g.matrix_for(&[3]).is_err());
        assert!(matches!(g.matrix_for(&[2, 2]), Err(Error::TargetCount { .. })));
    }

    #[test]
    fn serde_uses_name_and_params() {
        let g: Gate = serde_json::from_str(r#"{"name":"cphase","params":[0.5]}"#).unwrap();
        assert_eq!(g.kind(), GateKind::CPhase);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"name":"CPHASE","params":[0.5]}"#);
    }
}
