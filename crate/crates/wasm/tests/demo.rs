use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use descriptor_lab_wasm::demo;

#[test]
fn chsh_optimal_angles_reach_the_quantum_value() {
    let v = demo::chsh(0.0, FRAC_PI_2, FRAC_PI_4, -FRAC_PI_4).unwrap();
    assert!((v["winning"].as_f64().unwrap() - (2.0 + 2f64.sqrt()) / 4.0).abs() <= 1e-9);
    assert!((v["s"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() <= 1e-9);
    assert_eq!(v["settings"].as_array().unwrap().len(), 4);
    assert!(demo::chsh(f64::NAN, 0.0, 0.0, 0.0).is_err());
}

#[test]
fn chsh_sweep_stays_within_the_tsirelson_bound() {
    let v = demo::chsh_sweep(0.0, FRAC_PI_2, FRAC_PI_4, -FRAC_PI_4, 9).unwrap();
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 9);
    let best = (2.0 + 2f64.sqrt()) / 4.0;
    for p in points {
        let w = p[1].as_f64().unwrap();
        assert!((1.0 - best - 1e-9..=best + 1e-9).contains(&w));
    }
    assert!((points[0][1].as_f64().unwrap() - best).abs() <= 1e-9);
    assert!(demo::chsh_sweep(0.0, 0.0, 0.0, 0.0, 1).is_err());
}

#[test]
fn teleport_reproduces_the_bloch_input() {
    let (theta, phi) = (1.1, -0.4);
    for decohere in [false, true] {
        let v = demo::teleport(theta, phi, decohere, 1).unwrap();
        assert!((v["fidelity"].as_f64().unwrap() - 1.0).abs() <= 1e-9);
        let rho01 = &v["bob"][0][1];
        let expected = 0.5 * theta.sin();
        assert!((rho01[0].as_f64().unwrap() - expected * phi.cos()).abs() <= 1e-9);
        assert!((rho01[1].as_f64().unwrap() + expected * phi.sin()).abs() <= 1e-9);
        assert_eq!(v["bobDeltaBeforeCorrections"].as_f64(), Some(0.0));
    }
    assert!(demo::teleport(PI, 0.0, false, 0).is_err());
}

#[test]
fn step_trace_shows_local_changes_only() {
    let bell = r#"{"qubits": 3, "gates": [{"name": "H", "targets": [0]}, {"name": "CNOT", "targets": [0, 1]}]}"#;
    let v = demo::step_trace(bell).unwrap();
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    assert_eq!(steps[1]["deltas"][1].as_f64(), Some(0.0));
    assert_eq!(steps[2]["deltas"][2].as_f64(), Some(0.0));
    assert!(steps.iter().skip(1).all(|s| s["local"] == true));
    // after H(0) the x component of qubit 0 is Z on qubit 0
    let x0 = &steps[1]["qubits"][0]["x"][0];
    assert_eq!(x0["word"], "ZII");
    assert!((x0["re"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
    // the Bell pair leaves both reduced Bloch vectors at the origin
    for q in 0..2 {
        let b = steps[2]["qubits"][q]["bloch"].as_array().unwrap();
        assert!(b.iter().all(|c| c.as_f64().unwrap().abs() <= 1e-12));
    }
}

#[test]
fn step_trace_rejects_bad_input() {
    assert!(demo::step_trace("{").is_err());
    assert!(demo::step_trace(r#"{"qubits": 6, "gates": []}"#).is_err());
    assert!(demo::step_trace(r#"{"qubits": 2, "dims": [2, 3], "gates": []}"#).is_err());
}
