use std::f64::consts::TAU;

use descriptor_lab::descriptors::{expectation_on, locality_audit};
use descriptor_lab::linalg::ComplexMatrix;
use descriptor_lab::protocols::{chsh_game, teleportation, Channel, ChshAngles};
use descriptor_lab::{pauli_decompose, CircuitFile, DescriptorFrame, GateEvent, PauliSum, StepMode, C64};
use serde_json::{json, Value};

/// Largest total dimension the step trace accepts.
pub const TRACE_MAX_DIM: usize = 32;

/// Largest number of relay hops accepted by [`teleport`].
pub const MAX_HOPS: usize = 3;

type Result<T> = std::result::Result<T, String>;

fn text(e: impl ToString) -> String {
    e.to_string()
}

fn finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err("angles must be finite".into())
    }
}

pub fn chsh(a: f64, a_prime: f64, b: f64, b_prime: f64) -> Result<Value> {
    finite(&[a, a_prime, b, b_prime])?;
    let rep = chsh_game(ChshAngles { a, a_prime, b, b_prime }).map_err(text)?;
    let o = &rep.outcome;
    let settings: Vec<Value> = o
        .settings
        .iter()
        .map(|s| {
            json!({
                "x": s.x,
                "y": s.y,
                "winning": s.winning_measure,
                "correlation": s.correlation,
                "branches": s.branches.iter().map(|b| json!([b.key(), b.measure])).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "winning": o.winning_measure,
        "s": o.s_value,
        "convention": o.convention,
        "settings": settings,
        "pass": rep.pass,
    }))
}

pub fn chsh_sweep(a: f64, a_prime: f64, b: f64, b_prime: f64, samples: usize) -> Result<Value> {
    finite(&[a, a_prime, b, b_prime])?;
    if !(2..=360).contains(&samples) {
        return Err("samples must be between 2 and 360".into());
    }
    let mut points = Vec::with_capacity(samples);
    for k in 0..samples {
        let shift = TAU * k as f64 / (samples - 1) as f64;
        let rep = chsh_game(ChshAngles {
            a,
            a_prime,
            b: b + shift,
            b_prime: b_prime + shift,
        })
        .map_err(text)?;
        points.push(json!([shift, rep.outcome.winning_measure]));
    }
    Ok(json!({ "points": points }))
}

fn matrix(m: &ComplexMatrix) -> Value {
    let rows: Vec<Value> = (0..m.dim())
        .map(|r| Value::Array(m.row(r).into_iter().map(|z| json!([z.re, z.im])).collect()))
        .collect();
    Value::Array(rows)
}

pub fn teleport(theta: f64, phi: f64, decohere: bool, hops: usize) -> Result<Value> {
    finite(&[theta, phi])?;
    if !(1..=MAX_HOPS).contains(&hops) {
        return Err(format!("hops must be between 1 and {MAX_HOPS}"));
    }
    let alpha = C64::new((theta / 2.0).cos(), 0.0);
    let beta = C64::from_polar((theta / 2.0).sin(), phi);
    let rep = teleportation(alpha, beta, Channel { dephase: decohere, hops }).map_err(text)?;
    let o = &rep.outcome;
    Ok(json!({
        "bob": matrix(&o.bob_density),
        "expected": matrix(&o.expected_density),
        "fidelity": o.fidelity,
        "deviation": o.density_deviation,
        "bobDeltaBeforeCorrections": o.bob_delta_before_corrections,
        "steps": rep.steps.iter().map(|s| json!({
            "stage": s.stage,
            "gate": s.gate,
            "targets": s.targets,
            "maxOffTarget": s.audit.max_off_target,
        })).collect::<Vec<_>>(),
        "pass": rep.pass,
    }))
}

fn sum(f: &PauliSum) -> Value {
    Value::Array(
        f.terms()
            .iter()
            .map(|t| json!({ "re": t.coeff.re, "im": t.coeff.im, "word": t.word.to_string() }))
            .collect(),
    )
}

fn bloch(frame: &DescriptorFrame, q: usize) -> Result<Value> {
    let mut v = Vec::with_capacity(3);
    for w in ["1*X", "1*Y", "1*Z"] {
        let f: PauliSum = w.parse().map_err(text)?;
        v.push(expectation_on(frame, &f, &[q]).map_err(text)?);
    }
    Ok(json!(v))
}

fn snapshot(frame: &DescriptorFrame) -> Result<Value> {
    let n = frame.layout().len();
    let mut qubits = Vec::with_capacity(n);
    for (q, d) in frame.descriptors().iter().enumerate() {
        let x = pauli_decompose(d.x().ok_or("qubit layout expected")?, n).map_err(text)?;
        let z = pauli_decompose(d.z().ok_or("qubit layout expected")?, n).map_err(text)?;
        qubits.push(json!({ "x": sum(&x), "z": sum(&z), "bloch": bloch(frame, q)? }));
    }
    Ok(Value::Array(qubits))
}

pub fn step_trace(circuit_json: &str) -> Result<Value> {
    let file = CircuitFile::parse(circuit_json).map_err(text)?;
    let layout = file.layout_with_cap(TRACE_MAX_DIM).map_err(text)?;
    if !layout.all_qubits() {
        return Err("the step trace handles qubits only".into());
    }
    let circuit = file.circuit(&layout).map_err(text)?;
    let mut frame = DescriptorFrame::new(layout).map_err(text)?;
    let mut steps = vec![json!({ "gate": null, "targets": [], "deltas": [], "qubits": snapshot(&frame)? })];
    for ins in circuit.instructions() {
        let event = GateEvent::from_instruction(ins).map_err(text)?;
        let next = frame.evolve_step_with(&event, StepMode::LocalReduction).map_err(text)?;
        let audit = locality_audit(&frame, &next, &ins.targets).map_err(text)?;
        steps.push(json!({
            "gate": ins.gate.label(),
            "targets": ins.targets,
            "deltas": audit.deltas,
            "local": audit.pass,
            "qubits": snapshot(&next)?,
        }));
        frame = next;
    }
    Ok(json!({ "qubits": frame.layout().len(), "steps": steps }))
}
