use rand::seq::SliceRandom;
use rand::Rng;

use super::{CaseResult, RunConfig, SuiteError, SuiteReport};
use crate::coeffalg::CoeffAlgebra;
use crate::cohfun::{decompose_chi, five_term_sum, simple_functor_eval, CohFunction, Label};
use crate::exactlin::Field;
use crate::perfcx::PerfectComplex;
use crate::random::{case_rng, scramble};

fn names<F: Field>(field: &F, terms: &[(Label<F>, usize)]) -> String {
    let parts: Vec<String> = terms.iter().map(|(l, m)| format!("{m}*{}", l.name(field))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Random combinations of at most six irreducibles with multiplicities up to
/// five are recovered by decompose_chi; χ of X ⊕ X decomposes as χ_X.
pub fn decompose_suite<F: Field>(field: &F, cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    let alg = CoeffAlgebra::dual_numbers(field);
    let mut rep = SuiteReport::new("decompose");
    let mut basis: Vec<Label<F>> = (-3..=3).map(|shift| Label::Simple { shift }).collect();
    basis.extend((0..=4).flat_map(|r| (-2..=2).map(move |n| Label::Object { n, r })));
    let probes: Vec<PerfectComplex<F>> = (0..=6).map(|s| PerfectComplex::string(&alg, 0, s)).collect();
    for i in 0..cfg.cases_or(100) {
        let mut rng = case_rng(cfg.seed, i as u64);
        let k = rng.gen_range(1..=6);
        let mut want: Vec<(Label<F>, usize)> =
            basis.choose_multiple(&mut rng, k).map(|l| (l.clone(), rng.gen_range(1..=5))).collect();
        want.sort();
        let chi = CohFunction::combo(&alg, &want)?;
        let (pass, detail) = match decompose_chi(&chi, &basis, &probes) {
            Ok(got) => (got == want, format!("{} -> {}", names(field, &want), names(field, &got))),
            Err(e) => (false, format!("{} -> error: {e}", names(field, &want))),
        };
        rep.push(CaseResult::new(format!("combo-{i}"), pass, detail));
    }
    let mut rng = case_rng(cfg.seed, u64::MAX);
    for (n, r) in [(0, 0), (1, 1), (-1, 2), (2, 3)] {
        let h = PerfectComplex::string(&alg, n, r);
        let hh = scramble(&h.direct_sum(&h), &mut rng);
        let chi = CohFunction::of_complex(&hh)?;
        let want = vec![(Label::Object { n, r }, 1)];
        let (pass, detail) = match decompose_chi(&chi, &basis, &probes) {
            Ok(got) => (got == want, format!("X({n},{r}) twice -> {}", names(field, &got))),
            Err(e) => (false, format!("X({n},{r}) twice -> error: {e}")),
        };
        rep.push(CaseResult::new(format!("doubled-X({n},{r})"), pass, detail));
    }
    Ok(rep)
}

/// For |n| ≤ 3, r ≤ 3 and every probe X_{m,s} with |m| ≤ 3, s ≤ 3:
/// S_{n,r}(X_{m,s}) = δ and the five-term sum along the AR triangle is 0.
pub fn ar_exact_suite<F: Field>(field: &F, _cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    let alg = CoeffAlgebra::dual_numbers(field);
    let mut rep = SuiteReport::new("ar-exact");
    let probes: Vec<(i32, usize, PerfectComplex<F>)> =
        (-3..=3).flat_map(|m| (0..=3).map(move |s| (m, s))).map(|(m, s)| (m, s, PerfectComplex::string(&alg, m, s))).collect();
    for n in -3..=3 {
        for r in 0..=3 {
            let mut bad = Vec::new();
            for (m, s, c) in &probes {
                let v = simple_functor_eval(&alg, n, r, c)?;
                let delta = usize::from((n, r) == (*m, *s));
                let sum = five_term_sum(&alg, n, r, c)?;
                if v != delta || sum != 0 {
                    bad.push(format!("X({m},{s}): S={v} sum={sum}"));
                }
            }
            rep.push(CaseResult::new(
                format!("S({n},{r})"),
                bad.is_empty(),
                if bad.is_empty() { format!("{} probes", probes.len()) } else { bad.join("; ") },
            ));
        }
    }
    Ok(rep)
}
