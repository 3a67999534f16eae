use std::process::ExitCode;
use std::time::Instant;

use cohlen_core::exactlin::PrimeField;
use cohlen_core::suites::{run_suite, RunConfig, SuiteReport};

const CRITERIA: [(usize, &str); 9] = [
    (1, "barcode"),
    (2, "theorem1"),
    (3, "axioms"),
    (4, "decompose"),
    (5, "ar-exact"),
    (6, "schanuel"),
    (7, "spectrum"),
    (8, "spec-embedding"),
    (9, "endolength"),
];

fn run(name: &str, cfg: &RunConfig) -> (Result<SuiteReport, String>, f64) {
    let f5 = PrimeField::new(5).expect("5 is prime");
    let t = Instant::now();
    let r = run_suite(name, &f5, cfg).map_err(|e| e.to_string());
    (r, t.elapsed().as_secs_f64())
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let mut all = true;
    let mut first = Vec::new();
    for (n, name) in CRITERIA {
        let (r, secs) = run(name, &cfg);
        let ok = matches!(&r, Ok(rep) if rep.passed()) && secs < 60.0;
        all &= ok;
        match &r {
            Ok(rep) => {
                println!(
                    "criterion {n} {name}: {} ({} cases, {} failed, {secs:.1}s)",
                    if ok { "PASS" } else { "FAIL" },
                    rep.cases.len(),
                    rep.failures()
                );
                for c in rep.cases.iter().filter(|c| !c.pass).take(5) {
                    println!("    {} {}", c.id, c.detail);
                }
            }
            Err(e) => println!("criterion {n} {name}: FAIL (error: {e})"),
        }
        first.push(r.ok());
    }

    let mut diffs = Vec::new();
    for ((_, name), prev) in CRITERIA.iter().zip(&first) {
        let (again, _) = run(name, &cfg);
        let same = match (prev, again.ok()) {
            (Some(a), Some(b)) => a.to_text() == b.to_text() && a.all_artifacts().ok() == b.all_artifacts().ok(),
            _ => false,
        };
        if !same {
            diffs.push(*name);
        }
    }
    all &= diffs.is_empty();
    println!(
        "criterion 10 determinism: {} ({} suites rerun{})",
        if diffs.is_empty() { "PASS" } else { "FAIL" },
        CRITERIA.len(),
        if diffs.is_empty() { String::new() } else { format!(", differing: {}", diffs.join(" ")) }
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
