use std::fs;

use descriptor_lab::descriptors::expectation;
use descriptor_lab::pictures::{born_expectation, instrumental_equivalence_check, observable_matrix, schrodinger_run};
use descriptor_lab::tolerance;
use descriptor_lab::{Circuit, CircuitFile, DescriptorFrame, PauliSum, SystemLayout};
use serde::Serialize;
use serde_json::json;

use crate::args::{Picture, SimulateArgs};
use crate::output::{engine, field, sig, usage, verdict, Failure, Report};

#[derive(Debug, Serialize)]
struct Row {
    observable: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    schrodinger: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    heisenberg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agnostic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_difference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
}

pub fn run(args: &SimulateArgs, max_dim: usize) -> Result<Report, Failure> {
    let path = args.circuit.display().to_string();
    let text = fs::read_to_string(&args.circuit).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    let file = CircuitFile::parse(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    let layout = file.layout_with_cap(max_dim).map_err(|e| usage(format!("{path}: {e}")))?;
    let circuit = file.circuit(&layout).map_err(|e| usage(format!("{path}: {e}")))?;
    let observables = observables(&args.observables, &layout)?;

    let mut rows = Vec::with_capacity(observables.len());
    match args.picture {
        Picture::Both => {
            for (label, f) in &observables {
                let rep = instrumental_equivalence_check(&circuit, f, &layout).map_err(engine)?;
                rows.push(Row {
                    observable: label.clone(),
                    schrodinger: Some(rep.schrodinger),
                    heisenberg: Some(rep.heisenberg),
                    agnostic: Some(rep.agnostic),
                    max_difference: Some(rep.max_difference),
                    pass: Some(rep.pass),
                });
            }
        }
        Picture::Heisenberg => {
            let frame = heisenberg_frame(&circuit, &layout)?;
            for (label, f) in &observables {
                let value = expectation(&frame, f).map_err(engine)?;
                rows.push(single(label, None, Some(value)));
            }
        }
        Picture::Schrodinger => {
            let state = schrodinger_run(&circuit, &layout).map_err(engine)?;
            for (label, f) in &observables {
                let m = observable_matrix(f, &layout).map_err(engine)?;
                let value = born_expectation(&state, &m).map_err(engine)?;
                rows.push(single(label, Some(value), None));
            }
        }
    }
    let pass = rows.iter().all(|r| r.pass != Some(false));
    let picture = match args.picture {
        Picture::Heisenberg => "heisenberg",
        Picture::Schrodinger => "schrodinger",
        Picture::Both => "both",
    };
    let json = json!({
        "circuit": path,
        "dims": layout.dims(),
        "gates": circuit.len(),
        "picture": picture,
        "tolerance": tolerance::EQUIVALENCE,
        "observables": rows,
        "pass": pass,
    });
    Ok(Report {
        text: text_report(&path, &layout, &circuit, picture, &rows, pass),
        csv: csv_report(&rows),
        json,
        pass,
    })
}

fn single(label: &str, schrodinger: Option<f64>, heisenberg: Option<f64>) -> Row {
    Row {
        observable: label.to_string(),
        schrodinger,
        heisenberg,
        agnostic: None,
        max_difference: None,
        pass: None,
    }
}

fn heisenberg_frame(circuit: &Circuit, layout: &SystemLayout) -> Result<DescriptorFrame, Failure> {
    if layout.all_qubits() {
        DescriptorFrame::new(layout.clone())
            .and_then(|f| f.run_steps(circuit, Default::default()))
            .map_err(engine)
    } else {
        DescriptorFrame::run_global(layout, circuit).map_err(engine)
    }
}

/// Parses, pads and validates the requested observables.
fn observables(requested: &[String], layout: &SystemLayout) -> Result<Vec<(String, PauliSum)>, Failure> {
    let n = layout.len();
    let defaults: Vec<String>;
    let texts = if requested.is_empty() {
        defaults = (0..n)
            .filter(|&q| layout.is_qubit(q))
            .map(|q| (0..n).map(|k| if k == q { 'Z' } else { 'I' }).collect())
            .collect();
        &defaults
    } else {
        requested
    };
    texts
        .iter()
        .map(|t| {
            let f: PauliSum = t.parse().map_err(|e| usage(format!("observable `{t}`: {e}")))?;
            if f.n_qubits() > n {
                return Err(usage(format!("observable `{t}` has {} letters but the circuit has {n} subsystems", f.n_qubits())));
            }
            let f = f.padded(n).map_err(usage)?;
            if !f.is_hermitian(tolerance::HERMITICITY) {
                return Err(usage(format!("observable `{t}` is not Hermitian")));
            }
            for term in f.terms() {
                for (q, letter) in term.word.letters().iter().enumerate() {
                    if letter.to_char() != 'I' && !layout.is_qubit(q) {
                        return Err(usage(format!("observable `{t}` puts a Pauli letter on qudit {q}")));
                    }
                }
            }
            Ok((t.clone(), f))
        })
        .collect()
}

fn opt(x: Option<f64>) -> String {
    x.map(sig).unwrap_or_default()
}

fn text_report(path: &str, layout: &SystemLayout, circuit: &Circuit, picture: &str, rows: &[Row], pass: bool) -> String {
    let mut out = format!(
        "circuit: {path} ({} subsystem{}, dims {:?}, {} gate{})\npicture: {picture}\n",
        layout.len(),
        if layout.len() == 1 { "" } else { "s" },
        layout.dims(),
        circuit.len(),
        if circuit.len() == 1 { "" } else { "s" },
    );
    for r in rows {
        out.push_str(&format!("{}:", r.observable));
        for (name, v) in [("schrodinger", r.schrodinger), ("heisenberg", r.heisenberg), ("agnostic", r.agnostic)] {
            if let Some(v) = v {
                out.push_str(&format!(" {name} {}", sig(v)));
            }
        }
        if let (Some(d), Some(p)) = (r.max_difference, r.pass) {
            out.push_str(&format!(" max difference {} {} (tol {})", sig(d), verdict(p), sig(tolerance::EQUIVALENCE)));
        }
        out.push('\n');
    }
    if picture == "both" {
        out.push_str(&format!("result: {}\n", verdict(pass)));
    }
    out
}

fn csv_report(rows: &[Row]) -> String {
    let mut out = String::from("observable,schrodinger,heisenberg,agnostic,max_difference,pass\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            field(&r.observable),
            opt(r.schrodinger),
            opt(r.heisenberg),
            opt(r.agnostic),
            opt(r.max_difference),
            r.pass.map(|p| p.to_string()).unwrap_or_default()
        ));
    }
    out
}
