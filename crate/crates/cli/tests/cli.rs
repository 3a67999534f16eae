use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cohlen_core::cohfun::{chi_table, chi_table_csv, string_probes, CohFunction};
use cohlen_core::coeffalg::CoeffAlgebra;
use cohlen_core::perfcx::{complex_to_json, PerfectComplex};
use cohlen_core::suites::{run_suite, RunConfig};
use cohlen_core::PrimeField;

fn cohlen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohlen")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn write_complex(dir: &Path, name: &str, x: &PerfectComplex<PrimeField>) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string(&complex_to_json(x)).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn decompose_string_complex() {
    let dir = tempfile::tempdir().unwrap();
    let alg = CoeffAlgebra::dual_numbers(&f5());
    let input = write_complex(dir.path(), "x02.json", &PerfectComplex::string(&alg, 0, 2));
    let out = dir.path().join("out");
    let o = cohlen(&["decompose", &input, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "X(0,2)\n");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("barcode.json")).unwrap()).unwrap();
    assert_eq!(json, serde_json::json!([{"n": 0, "r": 2, "multiplicity": 1}]));
}

#[test]
fn decompose_direct_sum() {
    let dir = tempfile::tempdir().unwrap();
    let alg = CoeffAlgebra::dual_numbers(&f5());
    let x = PerfectComplex::string(&alg, 0, 0).direct_sum(&PerfectComplex::string(&alg, 1, 1)).direct_sum(&PerfectComplex::string(&alg, 0, 0));
    let input = write_complex(dir.path(), "sum.json", &x);
    let o = cohlen(&["decompose", &input]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "X(0,0)^2 + X(1,1)\n");
}

#[test]
fn corrupted_differential_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, r#"{"algebra":"dual_numbers","field":5,"ranks":{"0":1,"1":1,"2":1},"diffs":{"0":[[[0,1]]],"1":[[[1,1]]]}}"#).unwrap();
    let o = cohlen(&["decompose", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("degree 0"), "{err}");
}

#[test]
fn chi_table_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let alg = CoeffAlgebra::dual_numbers(&f5());
    let x = PerfectComplex::string(&alg, 0, 0);
    let input = write_complex(dir.path(), "x00.json", &x);
    let o = cohlen(&["chi", &input]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("\"X(0,0)\",0,2\n"));
    let chi = CohFunction::of_complex(&x).unwrap();
    let lib = chi_table_csv(&chi_table(&chi, &string_probes(&alg, 3), -3..=3).unwrap()).unwrap();
    assert_eq!(text, lib);
}

#[test]
fn chi_of_zero_complex_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("zero.json");
    fs::write(&p, r#"{"algebra":"dual_numbers","field":5,"ranks":{},"diffs":{}}"#).unwrap();
    let o = cohlen(&["chi", p.to_str().unwrap(), "--n-range", "-1:1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 4 * 3);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",0")), "{text}");
}

#[test]
fn chi_of_residue_module() {
    let o = cohlen(&["chi", "--module", "k", "--r-max", "4", "--n-range", "0:0"]);
    assert!(o.status.success());
    let want: String = (0..=4).map(|r| format!("\"X(0,{r})\",0,1\n")).collect();
    assert_eq!(stdout(&o), format!("probe,shift,value\n{want}"));
}

#[test]
fn custom_probe_file() {
    let dir = tempfile::tempdir().unwrap();
    let alg = CoeffAlgebra::dual_numbers(&f5());
    let probes = serde_json::json!({ "P": complex_to_json(&PerfectComplex::string(&alg, 0, 1)) });
    let p = dir.path().join("probes.json");
    fs::write(&p, probes.to_string()).unwrap();
    let o = cohlen(&["chi", "--module", "k", "--probes", p.to_str().unwrap(), "--n-range", "0:1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "probe,shift,value\nP,0,1\nP,1,1\n");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = cohlen(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_writes_library_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = cohlen(&["verify", "spectrum", "--r-max", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("r_max-3 isolated [X(0,0) X(0,1) X(0,2) X(0,3)], limit points [k]"), "{text}");
    let rep = run_suite("spectrum", &f5(), &RunConfig { r_max: 3, ..RunConfig::default() }).unwrap();
    assert_eq!(text, rep.to_text());
    for (name, contents) in rep.all_artifacts().unwrap() {
        assert_eq!(fs::read_to_string(out.join(&name)).unwrap(), contents, "{name}");
    }
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<_> = ["a", "b"]
        .iter()
        .map(|d| {
            let out = dir.path().join(d);
            let o = cohlen(&["verify", "barcode", "--seed", "9", "--cases", "20", "--out", out.to_str().unwrap()]);
            assert!(o.status.success());
            (stdout(&o), fs::read_to_string(out.join("barcode_cases.csv")).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn verify_over_rationals() {
    let o = cohlen(&["verify", "ar-exact", "--field", "Q"]);
    assert!(o.status.success(), "{}", stdout(&o));
}
