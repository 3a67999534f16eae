use super::{json, CaseResult, RunConfig, SuiteError, SuiteReport};
use crate::coeffalg::{CoeffAlgebra, PrimeDatum};
use crate::exactlin::{poly, Field};
use crate::perfcx::PerfectComplex;
use crate::random::{case_rng, random_poly_complex};
use crate::spectrum::{enumerate_sp_dual_numbers, rho_injectivity_check, spectrum_csv, spectrum_rows, spectrum_summary, supp_dichotomy_check};

/// Windows r_max = 3..6 (extended to cover cfg.r_max): the isolated points
/// are exactly the object labels and the closure surrogate passes with
/// bound 2·r_max + 2.
pub fn spectrum_suite<F: Field>(field: &F, cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    let alg = CoeffAlgebra::dual_numbers(field);
    let mut rep = SuiteReport::new("spectrum");
    for r_max in cfg.r_max.min(3)..=cfg.r_max.max(6) {
        let w = enumerate_sp_dual_numbers(&alg, r_max)?;
        let bound = 2 * r_max + 2;
        let s = spectrum_summary(&w, bound)?;
        let closed_ok = s.checks.closed_length_sets.iter().all(|c| c.violation.is_none());
        rep.push(CaseResult::new(
            format!("r_max-{r_max}"),
            s.checks.distinct && s.checks.isolated_are_objects && s.checks.closure.ok() && closed_ok,
            format!(
                "isolated [{}], limit points [{}], closure hits {:?} and beyond the window {:?} with R = {bound}",
                s.isolated.join(" "),
                s.limit_points.join(" "),
                s.checks.closure.hit,
                s.checks.closure.hit_outside_window
            ),
        ));
        rep.artifacts.insert(format!("spectrum_r{r_max}.csv"), spectrum_csv(&spectrum_rows(&w))?);
        rep.artifacts.insert(format!("spectrum_r{r_max}.json"), json(&s)?);
    }
    Ok(rep)
}

fn sample_primes<F: Field>(field: &F) -> (Vec<PrimeDatum<F>>, Vec<String>) {
    let mut primes = vec![PrimeDatum::Zero];
    let mut skipped = Vec::new();
    for c in [&[0, 1][..], &[-1, 1], &[-2, 1], &[2, 0, 1], &[3, 0, 1]] {
        let f = poly::from_i64s(field, c);
        match PrimeDatum::principal(field, f.clone()) {
            Ok(p) if !primes.contains(&p) => primes.push(p),
            Ok(_) => {}
            Err(_) => skipped.push(poly::display(field, &f, "x")),
        }
    }
    (primes, skipped)
}

/// Over k[x]: residue functions of distinct sampled primes are separated,
/// and supports of random complexes satisfy the generic/Fitting dichotomy.
/// Sample polynomials that are not prime over the field are skipped and
/// listed; coincident primes are kept once.
pub fn spec_embedding_suite<F: Field>(field: &F, cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    let alg = CoeffAlgebra::poly_ring(field);
    let mut rep = SuiteReport::new("spec-embedding");
    let (primes, skipped) = sample_primes(field);
    let probes = vec![("A".to_string(), PerfectComplex::stalk(&alg, 0, 1))];
    let seps = rho_injectivity_check(&alg, &primes, &probes)?;
    let collisions: Vec<String> = seps.iter().filter(|s| s.probe.is_none()).map(|s| format!("{} ~ {}", s.first, s.second)).collect();
    rep.push(CaseResult::new(
        "rho-injective",
        collisions.is_empty(),
        format!(
            "{} primes, {} pairs separated{}{}",
            primes.len(),
            seps.len() - collisions.len(),
            if collisions.is_empty() { String::new() } else { format!(", collisions: {}", collisions.join(", ")) },
            if skipped.is_empty() { String::new() } else { format!(", not prime here: {}", skipped.join(" ")) }
        ),
    ));
    rep.artifacts.insert("rho_separations.json".into(), json(&seps)?);
    let mut supports = Vec::new();
    for i in 0..cfg.cases_or(50) {
        let mut rng = case_rng(cfg.seed, i as u64);
        let x = random_poly_complex(&alg, 3, &mut rng);
        let s = supp_dichotomy_check(&x, &primes)?;
        rep.push(CaseResult::new(
            format!("complex-{i}"),
            s.violation.is_none(),
            match &s.violation {
                None => format!("supp {{{}}}{}", s.support.join(" "), if s.generic { " generic" } else { "" }),
                Some(v) => v.clone(),
            },
        ));
        supports.push(s);
    }
    rep.artifacts.insert("supports.json".into(), json(&supports)?);
    Ok(rep)
}
