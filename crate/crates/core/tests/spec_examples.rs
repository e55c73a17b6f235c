mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use common::*;
use descriptor_lab::descriptors::{expectation, reconstruct_density, recover_unitary, ComponentLabel};
use descriptor_lab::functional::{ComponentMap, QubitComponents};
use descriptor_lab::pauli::Pauli;
use descriptor_lab::pictures::{
    born_expectation, compare_circuits, instrumental_equivalence_check, noninjectivity_witness, projective_equal,
    same_noumenal_class, schrodinger_run, NoumenalClassQuery, SchrodingerState,
};
use descriptor_lab::random::{haar_unitary, rng};
use descriptor_lab::suites::phase_aligned_difference;
use descriptor_lab::{
    conjugate, gate, pauli_decompose, pauli_eval, tensor_embed, Circuit, ComplexMatrix, Descriptor, DescriptorFrame,
    GateEvent, PauliSum, SystemLayout, C64,
};

fn qubits(n: usize) -> SystemLayout {
    SystemLayout::qubits(n).unwrap()
}

fn circ(ops: &[(&str, &[usize])]) -> Circuit {
    let mut c = Circuit::new();
    for (name, targets) in ops {
        c.push(name, &[], targets).unwrap();
    }
    c
}

fn close(a: &ComplexMatrix, b: &M, tol: f64) -> bool {
    max_diff(&to_na(a), b) <= tol
}

fn bell() -> Circuit {
    circ(&[("H", &[0]), ("CNOT", &[0, 1])])
}

#[test]
fn embedding_examples() {
    let z = gate("Z", &[]).unwrap();
    assert_eq!(tensor_embed(&z, &[0], &qubits(1)).unwrap(), z);
    let x1 = tensor_embed(&gate("X", &[]).unwrap(), &[1], &qubits(2)).unwrap();
    assert!(close(&x1, &word("IX"), 0.0));
    let cnot = gate("CNOT", &[]).unwrap();
    let swap = embed(&to_na(&gate("SWAP", &[]).unwrap()), &[0, 1], 2);
    let reversed = tensor_embed(&cnot, &[1, 0], &qubits(2)).unwrap();
    assert!(close(&reversed, &(&swap * to_na(&cnot) * &swap), 0.0));
}

#[test]
fn conjugation_examples() {
    let a = haar_unitary(4, &mut rng(3));
    assert_eq!(conjugate(&ComplexMatrix::identity(4), &a).unwrap(), a);
    let z = gate("Z", &[]).unwrap();
    assert_eq!(conjugate(&gate("X", &[]).unwrap(), &z).unwrap(), -&z);
    let cz = gate("CZ", &[]).unwrap();
    let got = conjugate(&cz, &from_na(&word("XI"))).unwrap();
    assert!(close(&got, &heisenberg(&to_na(&cz), &word("XI")), 1e-15));
    assert!(close(&got, &word("XZ"), 1e-15));
}

#[test]
fn decomposition_examples() {
    let check = |m: &ComplexMatrix, n: usize| {
        let sum = pauli_decompose(m, n).unwrap();
        for w in all_words(n) {
            let letters: Vec<Pauli> = w.chars().map(|ch| Pauli::from_char(ch).unwrap()).collect();
            let oracle = pauli_coefficient(&to_na(m), &w);
            assert!((sum.coefficient(&letters) - oracle).norm() <= 1e-12, "{w}");
        }
        sum
    };
    let x = check(&gate("X", &[]).unwrap(), 1);
    assert_eq!(x.len(), 1);
    let h = check(&gate("H", &[]).unwrap(), 1);
    assert!((h.coefficient(&[Pauli::X]).re - FRAC_1_SQRT_2).abs() <= 1e-15);
    let cnot = check(&gate("CNOT", &[]).unwrap(), 2);
    assert_eq!(cnot.len(), 4);
    assert!((cnot.coefficient(&[Pauli::Z, Pauli::X]).re + 0.5).abs() <= 1e-15);
}

#[test]
fn functional_evaluation_examples() {
    let frame = DescriptorFrame::new(qubits(2)).unwrap();
    let q0 = frame.descriptor(0);
    let slots = || {
        ComponentMap::new(vec![Some(QubitComponents {
            x: q0.x().unwrap(),
            z: q0.z().unwrap(),
        })])
        .unwrap()
    };
    let z: PauliSum = "1*Z".parse().unwrap();
    assert!(close(&pauli_eval(&z, &slots()).unwrap(), &word("ZI"), 0.0));
    let h = pauli_decompose(&gate("H", &[]).unwrap(), 1).unwrap();
    let embedded_h = tensor_embed(&gate("H", &[]).unwrap(), &[0], &qubits(2)).unwrap();
    assert!(pauli_eval(&h, &slots()).unwrap().max_abs_diff(&embedded_h).unwrap() <= 1e-15);
    let y: PauliSum = "1*Y".parse().unwrap();
    assert!(close(&pauli_eval(&y, &slots()).unwrap(), &word("YI"), 1e-15));
}

#[test]
fn gate_library_examples() {
    assert!(close(&gate("Z", &[]).unwrap(), &word("Z"), 0.0));
    let rz = gate("RZ", &[PI]).unwrap();
    let phase = C64::from_polar(1.0, -PI / 2.0);
    assert!((rz.get(0, 0) - phase).norm() <= 1e-15);
    assert!((rz.get(1, 1) - phase.conj()).norm() <= 1e-15);
    let cnot = gate("CNOT", &[]).unwrap();
    assert_eq!(cnot.matmul(&cnot).unwrap(), ComplexMatrix::identity(4));
}

#[test]
fn initial_descriptor_examples() {
    let one = Descriptor::initial(&qubits(1), 0).unwrap();
    assert!(close(one.x().unwrap(), &word("X"), 0.0));
    assert!(close(one.z().unwrap(), &word("Z"), 0.0));
    let two = Descriptor::initial(&qubits(2), 1).unwrap();
    assert!(close(two.x().unwrap(), &word("IX"), 0.0));
    assert!(close(two.z().unwrap(), &word("IZ"), 0.0));
    let mixed = SystemLayout::new(vec![2, 3]).unwrap();
    let qutrit = Descriptor::initial(&mixed, 1).unwrap();
    assert_eq!(qutrit.components().len(), 9);
    let unit = qutrit.component(ComponentLabel::Unit { row: 2, col: 0 }).unwrap();
    let mut local = M::zeros(3, 3);
    local[(2, 0)] = c(1.0, 0.0);
    assert!(close(unit, &M::identity(2, 2).kronecker(&local), 0.0));
}

#[test]
fn global_evolution_examples() {
    let fresh = DescriptorFrame::new(qubits(2)).unwrap();
    let same = fresh.evolve_global(&ComplexMatrix::identity(4)).unwrap();
    assert_eq!(same.max_delta(&fresh).unwrap(), 0.0);
    assert_eq!(same.time(), fresh.time() + 1);

    let x0 = from_na(&word("XI"));
    let flipped = fresh.evolve_global(&x0).unwrap();
    assert!(close(flipped.descriptor(0).z().unwrap(), &-word("ZI"), 0.0));
    assert!(close(flipped.descriptor(0).x().unwrap(), &word("XI"), 0.0));

    let cz = from_na(&embed(&to_na(&gate("CZ", &[]).unwrap()), &[0, 1], 2));
    let after = fresh.evolve_global(&cz).unwrap();
    assert!(close(after.descriptor(0).x().unwrap(), &word("XZ"), 0.0));
    assert!(close(after.descriptor(1).x().unwrap(), &word("ZX"), 0.0));
    assert!(close(after.descriptor(0).z().unwrap(), &word("ZI"), 0.0));
    assert!(close(after.descriptor(1).z().unwrap(), &word("IZ"), 0.0));
}

#[test]
fn step_evolution_examples() {
    let fresh = DescriptorFrame::new(qubits(2)).unwrap();
    let h = GateEvent::gate("H", &[], &[0]).unwrap();
    let after_h = fresh.evolve_step(&h).unwrap();
    assert!(close(after_h.descriptor(0).x().unwrap(), &word("ZI"), 1e-15));
    assert!(close(after_h.descriptor(0).z().unwrap(), &word("XI"), 1e-15));
    assert_eq!(after_h.descriptor(1), fresh.descriptor(1));

    let bell_frame = after_h.evolve_step(&GateEvent::gate("CNOT", &[], &[0, 1]).unwrap()).unwrap();
    let total = to_na(&bell().unitary(&qubits(2)).unwrap());
    for (s, d) in bell_frame.descriptors().iter().enumerate() {
        let mut x = ['I', 'I'];
        let mut z = ['I', 'I'];
        x[s] = 'X';
        z[s] = 'Z';
        let xw: String = x.iter().collect();
        let zw: String = z.iter().collect();
        assert!(close(d.x().unwrap(), &heisenberg(&total, &word(&xw)), 1e-9));
        assert!(close(d.z().unwrap(), &heisenberg(&total, &word(&zw)), 1e-9));
    }

    let poked = bell_frame.evolve_step(&GateEvent::gate("RX", &[0.3], &[1]).unwrap()).unwrap();
    assert_eq!(poked.descriptor(0), bell_frame.descriptor(0));
}

#[test]
fn locality_examples() {
    let frame = DescriptorFrame::new(qubits(3)).unwrap();
    let t = frame.evolve_step(&GateEvent::gate("T", &[], &[2]).unwrap()).unwrap();
    let deltas = frame.subsystem_deltas(&t).unwrap();
    assert_eq!(&deltas[..2], &[0.0, 0.0]);
    let cnot = frame.evolve_step(&GateEvent::gate("CNOT", &[], &[0, 1]).unwrap()).unwrap();
    let deltas = frame.subsystem_deltas(&cnot).unwrap();
    assert!(deltas[2] <= 1e-10);
    assert!(deltas[0] > 0.1 && deltas[1] > 0.1);
}

#[test]
fn density_and_expectation_examples() {
    let layout = qubits(2);
    let fresh = DescriptorFrame::new(layout.clone()).unwrap();
    assert!(close(&reconstruct_density(&fresh, &[0]).unwrap(), &partial_trace(&zero_state(2), &[0], 2), 1e-15));
    assert!((expectation(&fresh, &"1*ZI".parse().unwrap()).unwrap() - 1.0).abs() <= 1e-15);

    let h = circ(&[("H", &[0])]);
    let after_h = DescriptorFrame::run_global(&layout, &h).unwrap();
    let rho = reconstruct_density(&after_h, &[0]).unwrap();
    assert!(close(&rho, &partial_trace(&statevector(&h, 2), &[0], 2), 1e-12));
    assert!(close(&rho, &(M::from_element(2, 2, c(0.5, 0.0))), 1e-12));
    assert!(expectation(&after_h, &"1*ZI".parse().unwrap()).unwrap().abs() <= 1e-12);

    let b = DescriptorFrame::run_global(&layout, &bell()).unwrap();
    let psi = statevector(&bell(), 2);
    assert!(close(&reconstruct_density(&b, &[0]).unwrap(), &(M::identity(2, 2) * c(0.5, 0.0)), 1e-12));
    assert!(close(&reconstruct_density(&b, &[0, 1]).unwrap(), &(&psi * psi.adjoint()), 1e-12));
    assert!((expectation(&b, &"1*ZZ".parse().unwrap()).unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn recovery_examples() {
    let fresh = DescriptorFrame::new(qubits(2)).unwrap();
    assert!(recover_unitary(&fresh).unwrap().max_abs_diff(&ComplexMatrix::identity(4)).unwrap() <= 1e-12);
    let h = gate("H", &[]).unwrap();
    let one = DescriptorFrame::new(qubits(1)).unwrap().evolve_global(&h).unwrap();
    assert!(phase_aligned_difference(&recover_unitary(&one).unwrap(), &h).unwrap() <= 1e-12);
    for seed in 0..100 {
        let u = haar_unitary(4, &mut rng(seed));
        let frame = fresh.evolve_global(&u).unwrap();
        assert!(phase_aligned_difference(&recover_unitary(&frame).unwrap(), frame.cumulative()).unwrap() <= 1e-8);
    }
}

#[test]
fn schrodinger_examples() {
    let one = qubits(1);
    let empty = schrodinger_run(&Circuit::new(), &qubits(3)).unwrap();
    assert_eq!(empty.amplitudes()[0], c(1.0, 0.0));
    let plus = schrodinger_run(&circ(&[("H", &[0])]), &one).unwrap();
    for a in plus.amplitudes() {
        assert!((a - c(FRAC_1_SQRT_2, 0.0)).norm() <= 1e-15);
    }
    let b = schrodinger_run(&bell(), &qubits(2)).unwrap();
    let oracle = statevector(&bell(), 2);
    for (a, o) in b.amplitudes().iter().zip(oracle.iter()) {
        assert!((a - o).norm() <= 1e-15);
    }

    let z = gate("Z", &[]).unwrap();
    assert_eq!(born_expectation(&SchrodingerState::new(one.clone()), &z).unwrap(), 1.0);
    let z0 = from_na(&word("ZI"));
    assert!(born_expectation(&b, &z0).unwrap().abs() <= 1e-15);
    assert!((born_expectation(&plus, &ComplexMatrix::identity(2)).unwrap() - 1.0).abs() <= 1e-15);

    let phase = C64::from_polar(1.0, PI / 7.0);
    let amps: Vec<C64> = b.amplitudes().iter().map(|a| a * phase).collect();
    let rotated = SchrodingerState::from_amplitudes(qubits(2), amps).unwrap();
    assert!(projective_equal(&b, &rotated));
    assert!(projective_equal(&b, &b));
    assert!(!projective_equal(&SchrodingerState::new(qubits(2)), &b));
}

#[test]
fn equivalence_examples() {
    let one = qubits(1);
    let z: PauliSum = "1*Z".parse().unwrap();
    let rep = instrumental_equivalence_check(&Circuit::new(), &z, &one).unwrap();
    assert!(rep.pass && rep.heisenberg == 1.0 && rep.schrodinger == 1.0 && rep.agnostic == 1.0);
    let rep = instrumental_equivalence_check(&circ(&[("H", &[0])]), &z, &one).unwrap();
    assert!(rep.pass && rep.heisenberg.abs() <= 1e-15);
}

#[test]
fn noumenal_class_examples() {
    let layout = qubits(2);
    let query = |u: ComplexMatrix, u_prime: ComplexMatrix| NoumenalClassQuery {
        layout: layout.clone(),
        u,
        u_prime,
        system: 0,
    };
    let u = haar_unitary(4, &mut rng(11));
    let w = from_na(&embed(&to_na(&haar_unitary(2, &mut rng(12))), &[1], 2));
    assert!(same_noumenal_class(&query(u.clone(), w.matmul(&u).unwrap())).unwrap());
    let x0 = from_na(&word("XI"));
    assert!(!same_noumenal_class(&query(ComplexMatrix::identity(4), x0)).unwrap());
    let cz = gate("CZ", &[]).unwrap();
    assert!(!same_noumenal_class(&query(ComplexMatrix::identity(4), cz.clone())).unwrap());
    let psi = to_na(&cz) * zero_state(2);
    assert!((&psi - zero_state(2)).norm() == 0.0);
}

#[test]
fn witness_examples() {
    let layout = qubits(2);
    let w = noninjectivity_witness(&layout).unwrap();
    assert_eq!(w.comparison.state_distance, 0.0);
    let oracle = max_diff(&word("XI"), &word("XZ"));
    assert_eq!(oracle, 2.0);
    assert_eq!(w.comparison.descriptor_delta, oracle);
    assert!(w.comparison.is_witness());

    let hh = compare_circuits(&circ(&[("H", &[0]), ("H", &[0])]), &Circuit::new(), &layout).unwrap();
    assert!(hh.projectively_equal && hh.descriptors_equal && !hh.is_witness());

    let mut phased = Circuit::new();
    phased.push("GPHASE", &[0.9], &[0]).unwrap();
    let ph = compare_circuits(&phased, &Circuit::new(), &layout).unwrap();
    assert!(ph.projectively_equal && ph.descriptors_equal);
    assert!(!ph.is_counterexample());
}
