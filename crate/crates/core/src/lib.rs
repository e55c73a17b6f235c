//! Heisenberg-picture simulation of quantum networks with Deutsch–Hayden
//! descriptors, checked against a Schrödinger-picture state-vector engine.
//!
//! - [`linalg`], [`layout`], [`embed`], [`pauli`], [`functional`], [`gates`]:
//!   dense operator algebra and the gate library.
//! - [`descriptors`]: descriptor frames, their global and step-wise evolution,
//!   locality audits, density reconstruction and unitary recovery.
//! - [`pictures`]: the state-vector oracle and the equivalence checks
//!   between the two pictures.
//! - [`protocols`]: superdense coding, teleportation, local branching and
//!   the CHSH game run on the descriptor engine.
//! - [`suites`]: seeded property suites behind `descriptor-lab verify`.

pub mod circuit;
pub mod descriptors;
pub mod embed;
pub mod error;
pub mod functional;
pub mod gates;
pub mod layout;
pub mod linalg;
pub mod pauli;
pub mod pictures;
pub mod protocols;
pub mod random;
pub mod suites;
pub mod tolerance;

pub use circuit::{Circuit, CircuitFile, Instruction};
pub use descriptors::{Descriptor, DescriptorFrame, GateEvent, StepMode};
pub use embed::tensor_embed;
pub use error::{Error, Result};
pub use functional::pauli_eval;
pub use gates::{gate, Gate, GateKind};
pub use layout::SystemLayout;
pub use linalg::{conjugate, ComplexMatrix, C64};
pub use pauli::{pauli_decompose, PauliSum, PauliWord};
pub use tolerance::Tolerances;
