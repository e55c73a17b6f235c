mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use common::*;
use descriptor_lab::protocols::{
    branch_csv, chsh_game, local_branching_demo, local_branching_with, superdense_coding, teleportation,
    BranchRecord, BranchTable, Channel, ChshAngles, ProtocolReport,
};
use descriptor_lab::random::{random_qubit_state, rng};
use descriptor_lab::C64;

fn audited<O>(rep: &ProtocolReport<O>) {
    assert!(rep.pass, "{} failed", rep.protocol);
    assert!(!rep.steps.is_empty());
    assert!(rep.steps.iter().all(|s| s.audit.pass), "{}", rep.protocol);
}

fn total(branches: &[BranchRecord]) -> f64 {
    branches.iter().map(|b| b.measure).sum()
}

fn input_density(alpha: C64, beta: C64) -> M {
    let v = V::from_vec(vec![alpha, beta]);
    &v * v.adjoint()
}

#[test]
fn superdense_frames_differ_while_transit_densities_agree() {
    let reps: Vec<_> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .into_iter()
        .map(|(i, j)| superdense_coding(i, j).unwrap())
        .collect();
    for rep in &reps {
        audited(rep);
        let o = &rep.outcome;
        assert_eq!(o.decoded, (o.i, o.j));
        assert!((o.decoded_measure - 1.0).abs() <= 1e-10);
        assert!((total(&o.branches) - 1.0).abs() <= 1e-10);
        assert_eq!(o.bob_delta_during_encoding, 0.0);
    }
    for (k, a) in reps.iter().enumerate() {
        for b in &reps[k + 1..] {
            let (a, b) = (&a.outcome, &b.outcome);
            let dx = max_diff(&to_na(&a.alice_x.materialize()), &to_na(&b.alice_x.materialize()));
            let dz = max_diff(&to_na(&a.alice_z.materialize()), &to_na(&b.alice_z.materialize()));
            assert!(dx.max(dz) >= 1.0, "({},{}) vs ({},{})", a.i, a.j, b.i, b.j);
            let transit = max_diff(&to_na(&a.transit_density), &to_na(&b.transit_density));
            assert!(transit <= 1e-10);
        }
    }
    let half = M::identity(2, 2) * c(0.5, 0.0);
    assert!(max_diff(&to_na(&reps[0].outcome.transit_density), &half) <= 1e-10);
}

#[test]
fn superdense_bit_i_flips_the_x_component() {
    let plain = superdense_coding(0, 0).unwrap().outcome;
    let coded = superdense_coding(1, 0).unwrap().outcome;
    let flipped = max_diff(&to_na(&coded.alice_x.materialize()), &(-to_na(&plain.alice_x.materialize())));
    assert!(flipped <= 1e-12);
    let same = max_diff(&to_na(&coded.alice_z.materialize()), &to_na(&plain.alice_z.materialize()));
    assert!(same <= 1e-12);
}

#[test]
fn teleportation_examples() {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    for (alpha, beta) in [(one, zero), (h, h)] {
        let rep = teleportation(alpha, beta, Channel::default()).unwrap();
        audited(&rep);
        assert!(max_diff(&to_na(&rep.outcome.bob_density), &input_density(alpha, beta)) <= 1e-9);
        assert_eq!(rep.outcome.bob_delta_before_corrections, 0.0);
    }
    let (alpha, beta) = (C64::new(0.6, 0.0), C64::new(0.0, 0.8));
    let clean = teleportation(alpha, beta, Channel::default()).unwrap();
    let noisy = teleportation(alpha, beta, Channel { dephase: true, hops: 1 }).unwrap();
    audited(&noisy);
    assert!(max_diff(&to_na(&clean.outcome.bob_density), &to_na(&noisy.outcome.bob_density)) <= 1e-9);
    assert!(max_diff(&to_na(&noisy.outcome.bob_density), &input_density(alpha, beta)) <= 1e-9);
    assert!((noisy.outcome.fidelity - 1.0).abs() <= 1e-9);
}

#[test]
fn teleportation_survives_relays_and_dephasing() {
    let mut r = rng(77);
    for _ in 0..5 {
        let (alpha, beta) = random_qubit_state(&mut r);
        for channel in [Channel { dephase: true, hops: 2 }, Channel { dephase: false, hops: 2 }] {
            let rep = teleportation(alpha, beta, channel).unwrap();
            audited(&rep);
            assert!(max_diff(&to_na(&rep.outcome.bob_density), &input_density(alpha, beta)) <= 1e-9);
        }
    }
}

#[test]
fn teleportation_rejects_unnormalized_input() {
    assert!(teleportation(C64::new(1.0, 0.0), C64::new(1.0, 0.0), Channel::default()).is_err());
}

#[test]
fn branching_examples() {
    let rep = local_branching_demo().unwrap();
    audited(&rep);
    let o = &rep.outcome;
    assert_eq!(o.bob_deltas_under_alice, [0.0, 0.0]);
    assert_eq!(o.alice_deltas_under_bob, [0.0, 0.0]);
    for b in &o.alice_branches {
        assert!((b.measure - 0.5).abs() <= 1e-10);
    }
    let expected = [0.5, 0.0, 0.0, 0.5];
    for (b, e) in o.joint_branches.iter().zip(expected) {
        assert!((b.measure - e).abs() <= 1e-10, "{}", b.key());
    }
    assert!((total(&o.joint_branches) - 1.0).abs() <= 1e-10);
}

#[test]
fn alice_side_ignores_bobs_basis() {
    let base = local_branching_with(0.0).unwrap().outcome.alice_side_density;
    for angle in [0.3, FRAC_PI_4, FRAC_PI_2, 2.0] {
        let rep = local_branching_with(angle).unwrap();
        audited(&rep);
        assert!(max_diff(&to_na(&rep.outcome.alice_side_density), &to_na(&base)) <= 1e-10);
        // joint record statistics do depend on the relative angle
        let (c2, s2) = ((angle / 2.0).cos().powi(2), (angle / 2.0).sin().powi(2));
        let expected = [c2 / 2.0, s2 / 2.0, s2 / 2.0, c2 / 2.0];
        for (b, e) in rep.outcome.joint_branches.iter().zip(expected) {
            assert!((b.measure - e).abs() <= 1e-10);
        }
    }
}

/// Win probability for one CHSH setting on `(|00> + |11>)/√2` with
/// measurements of `cos θ Z + sin θ X`: the correlation is `cos(θa − θb)`.
fn closed_form_win(x: u8, y: u8, ta: f64, tb: f64) -> f64 {
    let e = (ta - tb).cos();
    if x & y == 1 {
        (1.0 - e) / 2.0
    } else {
        (1.0 + e) / 2.0
    }
}

#[test]
fn chsh_matches_closed_forms() {
    let rep = chsh_game(ChshAngles::optimal()).unwrap();
    audited(&rep);
    let o = &rep.outcome;
    assert_eq!(o.settings.len(), 4);
    for s in &o.settings {
        let expected = closed_form_win(s.x, s.y, s.alice_angle, s.bob_angle);
        assert!((s.winning_measure - expected).abs() <= 1e-10);
        assert!(s.oracle_deviation <= 1e-10);
        assert!((total(&s.branches) - 1.0).abs() <= 1e-10);
    }
    assert!((o.winning_measure - (2.0 + 2f64.sqrt()) / 4.0).abs() <= 1e-9);
    assert!((o.s_value - 2.0 * 2f64.sqrt()).abs() <= 1e-9);
    assert!(o.max_oracle_deviation <= 1e-10);
}

#[test]
fn chsh_aligned_and_classical_angles() {
    let aligned = chsh_game(ChshAngles { a: 0.0, a_prime: 0.0, b: 0.0, b_prime: 0.0 }).unwrap();
    let zz = &aligned.outcome.settings[0];
    assert_eq!((zz.x, zz.y), (0, 0));
    assert!((zz.correlation - 1.0).abs() <= 1e-10);
    assert!((zz.winning_measure - 1.0).abs() <= 1e-10);
    assert!((aligned.outcome.winning_measure - 0.75).abs() <= 1e-10);
    let classical = chsh_game(ChshAngles::classical()).unwrap();
    assert!((classical.outcome.winning_measure - 0.75).abs() <= 1e-10);
}

#[test]
fn chsh_branch_table_lists_every_branch() {
    let rep = chsh_game(ChshAngles::optimal()).unwrap();
    let csv = branch_csv(&rep.outcome.branch_rows());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "setting,branch,measure");
    assert_eq!(lines.len(), 1 + 4 * 4);
}
