//! Browser bindings for three interactive views: the CHSH game, teleportation
//! of an arbitrary qubit, and a gate-by-gate trace of descriptor evolution.
//!
//! Every binding returns a JSON string. The functions in [`demo`] carry the
//! logic and are callable from native code.

use wasm_bindgen::prelude::*;

pub mod demo;

/// CHSH winning measure and per-setting branch measures for the given angles.
#[wasm_bindgen]
pub fn chsh(a: f64, a_prime: f64, b: f64, b_prime: f64) -> Result<String, JsError> {
    demo::chsh(a, a_prime, b, b_prime)
        .map(|v| v.to_string())
        .map_err(|e| JsError::new(&e))
}

/// Winning measure as Bob's two angles are rotated together through a full turn.
#[wasm_bindgen(js_name = chshSweep)]
pub fn chsh_sweep(a: f64, a_prime: f64, b: f64, b_prime: f64, samples: usize) -> Result<String, JsError> {
    demo::chsh_sweep(a, a_prime, b, b_prime, samples)
        .map(|v| v.to_string())
        .map_err(|e| JsError::new(&e))
}

/// Teleports `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>` and reports Bob's final density.
#[wasm_bindgen]
pub fn teleport(theta: f64, phi: f64, decohere: bool, hops: usize) -> Result<String, JsError> {
    demo::teleport(theta, phi, decohere, hops)
        .map(|v| v.to_string())
        .map_err(|e| JsError::new(&e))
}

/// Descriptor components after every gate of a circuit file.
#[wasm_bindgen(js_name = stepTrace)]
pub fn step_trace(circuit_json: &str) -> Result<String, JsError> {
    demo::step_trace(circuit_json)
        .map(|v| v.to_string())
        .map_err(|e| JsError::new(&e))
}
