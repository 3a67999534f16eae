use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use cohlen_core::coeffalg::{CoeffAlgebra, PrimeDatum};
use cohlen_core::cohfun::{chi_table, chi_table_csv, string_probes, CohFunction, Probe};
use cohlen_core::perfcx::{barcode, complex_from_json, FieldSpec, PerfectComplex};
use cohlen_core::suites::{run_suite, RunConfig, SUITES};
use cohlen_core::{PrimeField, Rationals};

#[derive(Parser)]
#[command(name = "cohlen", version, about = "Cohomological length functions on perfect complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Barcode of a complex over k[e]
    Decompose {
        /// Complex file (JSON)
        input: PathBuf,
        /// Directory for barcode.json
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of chi(Σ^k C) over the probe window
    Chi {
        /// Complex file (JSON); chi is the function of this object
        #[arg(required_unless_present = "module")]
        input: Option<PathBuf>,
        /// Use the function of a module instead of a complex: `k`
        #[arg(long, conflicts_with = "input")]
        module: Option<String>,
        #[command(flatten)]
        window: Window,
        #[arg(long, default_value = "5", value_parser = parse_field)]
        field: FieldArg,
        /// Directory for chi.csv
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value = "5", value_parser = parse_field)]
        field: FieldArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        #[arg(long, default_value = "-3:3", value_parser = parse_range, allow_hyphen_values = true)]
        n_range: (i32, i32),
        /// Number of random cases (suite default if omitted)
        #[arg(long)]
        cases: Option<usize>,
        /// Directory for CSV/JSON artifacts
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Window {
    /// Probes X(0,s) for s ≤ r_max
    #[arg(long, default_value_t = 3)]
    r_max: usize,
    /// Shifts a:b
    #[arg(long, default_value = "-3:3", value_parser = parse_range, allow_hyphen_values = true)]
    n_range: (i32, i32),
    /// JSON object mapping probe names to complex documents
    #[arg(long)]
    probes: Option<PathBuf>,
}

#[derive(Clone, Copy)]
enum FieldArg {
    Prime(u64),
    Q,
}

fn parse_field(s: &str) -> Result<FieldArg, String> {
    if s == "Q" {
        return Ok(FieldArg::Q);
    }
    let p: u64 = s.parse().map_err(|_| format!("expected a prime or Q, got {s:?}"))?;
    PrimeField::new(p).map_err(|e| e.to_string())?;
    Ok(FieldArg::Prime(p))
}

fn parse_range(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let a: i32 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let b: i32 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
    let p = dir.join(name);
    fs::write(&p, contents).map_err(|e| Failure(format!("{}: {e}", p.display())))
}

fn file_field(doc: &Value) -> Result<FieldArg, Failure> {
    match doc.get("field") {
        Some(Value::String(s)) if s == "Q" => Ok(FieldArg::Q),
        Some(v) => v.as_u64().map(FieldArg::Prime).ok_or_else(|| Failure(format!("field must be a prime or \"Q\", got {v}"))),
        None => Err(Failure("missing field \"field\"".into())),
    }
}

fn decompose<F: FieldSpec>(doc: &Value, out: Option<&Path>) -> Result<bool, Failure> {
    let x: PerfectComplex<F> = complex_from_json(doc)?;
    let d = barcode(&x)?;
    d.certify(&x)?;
    println!("{}", d.barcode);
    if let Some(dir) = out {
        write_out(dir, "barcode.json", &(serde_json::to_string_pretty(&d.barcode.to_json())? + "\n"))?;
    }
    Ok(true)
}

fn load_probes<F: FieldSpec>(alg: &CoeffAlgebra<F>, w: &Window) -> Result<Vec<Probe<F>>, Failure> {
    let Some(path) = &w.probes else {
        return Ok(string_probes(alg, w.r_max));
    };
    let doc = read_json(path)?;
    let map = doc.as_object().ok_or_else(|| Failure(format!("{}: expected an object of named complexes", path.display())))?;
    map.iter()
        .map(|(name, v)| {
            let complex: PerfectComplex<F> = complex_from_json(v).map_err(|e| Failure(format!("probe {name}: {e}")))?;
            if complex.algebra() != alg {
                return Err(Failure(format!("probe {name} is over {}, expected {}", complex.algebra().name(), alg.name())));
            }
            Ok(Probe { name: name.clone(), complex })
        })
        .collect()
}

fn chi<F: FieldSpec>(chi: &CohFunction<F>, w: &Window, out: Option<&Path>) -> Result<bool, Failure> {
    let probes = load_probes(chi.algebra(), w)?;
    let csv = chi_table_csv(&chi_table(chi, &probes, w.n_range.0..=w.n_range.1)?)?;
    print!("{csv}");
    if let Some(dir) = out {
        write_out(dir, "chi.csv", &csv)?;
    }
    Ok(true)
}

fn chi_of_module<F: FieldSpec>(field: &F, module: &str, w: &Window, out: Option<&Path>) -> Result<bool, Failure> {
    if module != "k" {
        return Err(Failure(format!("unknown module {module:?}; supported: k")));
    }
    let alg = CoeffAlgebra::dual_numbers(field);
    chi(&CohFunction::residue(&alg, &PrimeDatum::DualMaximal)?, w, out)
}

fn verify<F: FieldSpec>(field: &F, suite: &str, cfg: &RunConfig, out: Option<&Path>) -> Result<bool, Failure> {
    let rep = run_suite(suite, field, cfg)?;
    print!("{}", rep.to_text());
    if let Some(dir) = out {
        for (name, contents) in rep.all_artifacts()? {
            write_out(dir, &name, &contents)?;
        }
    }
    Ok(rep.passed())
}

macro_rules! with_field {
    ($arg:expr, $f:ident => $body:expr) => {
        match $arg {
            FieldArg::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
            FieldArg::Q => {
                let $f = Rationals;
                $body
            }
        }
    };
}

fn run(cmd: Command) -> Result<bool, Failure> {
    match cmd {
        Command::Decompose { input, out } => {
            let doc = read_json(&input)?;
            match file_field(&doc)? {
                FieldArg::Prime(_) => decompose::<PrimeField>(&doc, out.as_deref()),
                FieldArg::Q => decompose::<Rationals>(&doc, out.as_deref()),
            }
        }
        Command::Chi { input: Some(input), window, out, .. } => {
            let doc = read_json(&input)?;
            match file_field(&doc)? {
                FieldArg::Prime(_) => chi(&CohFunction::of_complex(&complex_from_json::<PrimeField>(&doc)?)?, &window, out.as_deref()),
                FieldArg::Q => chi(&CohFunction::of_complex(&complex_from_json::<Rationals>(&doc)?)?, &window, out.as_deref()),
            }
        }
        Command::Chi { input: None, module, window, field, out } => {
            let module = module.unwrap_or_default();
            with_field!(field, f => chi_of_module(&f, &module, &window, out.as_deref()))
        }
        Command::Verify { suite, field, seed, r_max, n_range, cases, out } => {
            let cfg = RunConfig { seed, r_max, n_range, cases };
            with_field!(field, f => verify(&f, &suite, &cfg, out.as_deref()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
