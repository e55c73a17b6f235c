use descriptor_lab::suites::{run_suite, SuiteReport};
use serde_json::Value;

use crate::args::VerifyArgs;
use crate::output::{engine, sig, verdict, Failure, Report};

pub fn run(args: &VerifyArgs) -> Result<Report, Failure> {
    let cases = args.cases.unwrap_or_else(|| args.suite.default_cases());
    let report = run_suite(args.suite, args.seed, cases).map_err(engine)?;
    let json = serde_json::to_value(&report).map_err(engine)?;
    Ok(Report {
        text: text_report(&report),
        csv: csv_report(&report),
        json,
        pass: report.pass,
    })
}

fn text_report(r: &SuiteReport) -> String {
    let mut out = format!(
        "suite: {} (seed {}, tolerance {})\ncases: {}/{} passed\n",
        r.check,
        r.seed,
        sig(r.tolerance),
        r.passed,
        r.cases
    );
    for (name, value) in &r.metrics {
        out.push_str(&format!("{name}: {}\n", sig(*value)));
    }
    if let Some(w) = &r.witness {
        out.push_str(&format!("witness: {}\n", compact(w)));
    }
    for c in r.details.iter().filter(|c| !c.pass) {
        out.push_str(&format!("failed case {} (seed {})\n", c.case, c.seed));
    }
    out.push_str(&format!("result: {}\n", verdict(r.pass)));
    out
}

fn compact(v: &Value) -> String {
    let mut v = v.clone();
    crate::output::round_json(&mut v);
    v.to_string()
}

fn csv_report(r: &SuiteReport) -> String {
    let names: Vec<&String> = r.details.first().map(|c| c.metrics.keys().collect()).unwrap_or_default();
    let mut out = String::from("case,seed,pass");
    for n in &names {
        out.push(',');
        out.push_str(n);
    }
    out.push('\n');
    for c in &r.details {
        out.push_str(&format!("{},{},{}", c.case, c.seed, c.pass));
        for n in &names {
            out.push(',');
            out.push_str(&c.metrics.get(*n).map(|v| sig(*v)).unwrap_or_default());
        }
        out.push('\n');
    }
    out
}
