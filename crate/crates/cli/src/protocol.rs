use descriptor_lab::linalg::ComplexMatrix;
use descriptor_lab::protocols::{
    branch_csv, chsh_game, local_branching_with, superdense_coding, teleportation, BranchRecord, BranchTable,
    Channel, ChshAngles, ProtocolReport,
};
use descriptor_lab::{PauliSum, C64};
use serde::Serialize;

use crate::args::{Protocol, ProtocolArgs};
use crate::output::{engine, sig, usage, verdict, Failure, Report};

pub fn run(args: &ProtocolArgs, max_dim: usize) -> Result<Report, Failure> {
    match args.protocol {
        Protocol::Sdc { i, j } => sdc(i, j),
        Protocol::Teleport { alpha, beta, decohere, hops } => teleport(alpha, beta, decohere, hops, max_dim),
        Protocol::Branching { bob_angle } => branching(bob_angle),
        Protocol::Chsh { a, a_prime, b, b_prime } => {
            let d = ChshAngles::optimal();
            chsh(ChshAngles {
                a: a.unwrap_or(d.a),
                a_prime: a_prime.unwrap_or(d.a_prime),
                b: b.unwrap_or(d.b),
                b_prime: b_prime.unwrap_or(d.b_prime),
            })
        }
    }
}

fn finish<O: Serialize>(rep: &ProtocolReport<O>, body: String, csv: String) -> Result<Report, Failure> {
    let failed = rep.steps.iter().filter(|s| !s.audit.pass).count();
    let text = format!(
        "protocol: {}\n{body}steps: {}, locality audits failed: {failed}\nresult: {}\n",
        rep.protocol,
        rep.steps.len(),
        verdict(rep.pass)
    );
    Ok(Report {
        json: serde_json::to_value(rep).map_err(engine)?,
        text,
        csv,
        pass: rep.pass,
    })
}

fn matrix(m: &ComplexMatrix) -> String {
    let rows: Vec<String> = (0..m.dim())
        .map(|r| {
            let cells: Vec<String> = m.row(r).into_iter().map(complex).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn complex(z: C64) -> String {
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => sig(z.re),
        (true, false) => format!("{}i", sig(z.im)),
        _ => format!("{}{}{}i", sig(z.re), if z.im < 0.0 { "-" } else { "+" }, sig(z.im.abs())),
    }
}

fn pauli_sum(f: &PauliSum) -> String {
    let terms: Vec<String> = f.terms().iter().map(|t| format!("({})*{}", complex(t.coeff), t.word)).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn branches(bs: &[BranchRecord]) -> String {
    bs.iter().map(|b| format!("{}: {}", b.key(), sig(b.measure))).collect::<Vec<_>>().join(", ")
}

fn sdc(i: u8, j: u8) -> Result<Report, Failure> {
    let rep = superdense_coding(i, j).map_err(engine)?;
    let o = &rep.outcome;
    let body = format!(
        "message: ({i}, {j})\ndecoded: ({}, {}) with measure {}\nbranches: {}\n\
         transit density: {} (deviation from 1/2: {})\n\
         alice x component: {}\nalice z component: {}\nbob delta during encoding: {}\n",
        o.decoded.0,
        o.decoded.1,
        sig(o.decoded_measure),
        branches(&o.branches),
        matrix(&o.transit_density),
        sig(o.transit_deviation),
        pauli_sum(&o.alice_x),
        pauli_sum(&o.alice_z),
        sig(o.bob_delta_during_encoding),
    );
    finish(&rep, body, branch_csv(&o.branch_rows()))
}

fn teleport(alpha: C64, beta: C64, dephase: bool, hops: u64, max_dim: usize) -> Result<Report, Failure> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(usage(format!("|alpha|^2 + |beta|^2 = {} (must be 1)", sig(norm))));
    }
    let hops = usize::try_from(hops).map_err(usage)?;
    let channel = Channel { dephase, hops };
    let qubits = 3 + 2 * hops + if dephase { 2 } else { 0 };
    if qubits >= usize::BITS as usize || 1usize << qubits > max_dim {
        return Err(usage(format!("{hops} hop(s) need {qubits} qubits, over the dimension cap {max_dim}")));
    }
    let rep = teleportation(alpha, beta, channel).map_err(engine)?;
    let o = &rep.outcome;
    let body = format!(
        "input: alpha {} beta {}\nchannel: {} hop(s), {}\nbob density: {}\nexpected density: {}\n\
         density deviation: {}\nfidelity: {}\nbob delta before corrections: {}\n",
        complex(alpha),
        complex(beta),
        hops,
        if dephase { "dephased" } else { "coherent" },
        matrix(&o.bob_density),
        matrix(&o.expected_density),
        sig(o.density_deviation),
        sig(o.fidelity),
        sig(o.bob_delta_before_corrections),
    );
    let mut csv = String::from("quantity,value\n");
    for (k, v) in [
        ("fidelity", o.fidelity),
        ("density_deviation", o.density_deviation),
        ("bob_delta_before_corrections", o.bob_delta_before_corrections),
    ] {
        csv.push_str(&format!("{k},{}\n", sig(v)));
    }
    for r in 0..2 {
        for c in 0..2 {
            let z = o.bob_density.get(r, c);
            csv.push_str(&format!("rho_{r}{c}_re,{}\nrho_{r}{c}_im,{}\n", sig(z.re), sig(z.im)));
        }
    }
    finish(&rep, body, csv)
}

fn branching(bob_angle: f64) -> Result<Report, Failure> {
    let rep = local_branching_with(bob_angle).map_err(engine)?;
    let o = &rep.outcome;
    let body = format!(
        "bob angle: {}\nalice branches: {}\nbob deltas under alice's measurement: [{}, {}]\n\
         alice deltas under bob's measurement: [{}, {}]\njoint branches: {}\nmax joint deviation: {}\n",
        sig(o.bob_angle),
        branches(&o.alice_branches),
        sig(o.bob_deltas_under_alice[0]),
        sig(o.bob_deltas_under_alice[1]),
        sig(o.alice_deltas_under_bob[0]),
        sig(o.alice_deltas_under_bob[1]),
        branches(&o.joint_branches),
        sig(o.joint_deviation),
    );
    finish(&rep, body, branch_csv(&o.branch_rows()))
}

fn chsh(angles: ChshAngles) -> Result<Report, Failure> {
    let rep = chsh_game(angles).map_err(engine)?;
    let o = &rep.outcome;
    let mut body = format!(
        "convention: {}\nangles: a {} a' {} b {} b' {}\n",
        o.convention,
        sig(angles.a),
        sig(angles.a_prime),
        sig(angles.b),
        sig(angles.b_prime)
    );
    for s in &o.settings {
        body.push_str(&format!(
            "setting x={} y={}: winning measure {}, correlation {}, oracle deviation {}\n",
            s.x,
            s.y,
            sig(s.winning_measure),
            sig(s.correlation),
            sig(s.oracle_deviation)
        ));
    }
    body.push_str(&format!("winning measure: {}\nS: {}\n", sig(o.winning_measure), sig(o.s_value)));
    finish(&rep, body, branch_csv(&o.branch_rows()))
}
