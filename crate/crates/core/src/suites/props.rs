use rand::Rng;

use super::{CaseResult, RunConfig, SuiteError, SuiteReport};
use crate::coeffalg::{analyze, module_length, CoeffAlgebra, PrimeDatum};
use crate::cohfun::{check_cohomological, check_strip, chi_of_module, strip_table, CohFunction, FinModule, Label};
use crate::exactlin::Field;
use crate::perfcx::{
    barcode, barcode_by_ranks, derived_hom_dim, homotopy_equivalent, mutate_add_contractible, mutate_scramble, mutate_sum_with_identity,
    schanuel_triangle_check, EndAlgebra, HomComplex, PerfectComplex, Triangle,
};
use crate::random::{case_rng, random_cone_triangle, random_dual_complex, random_end_algebra, random_module, DualShape};

const SMALL: DualShape = DualShape { lo: -1, hi: 1, max_rank: 2 };

/// Random complexes: the elder-rule barcode is certified by an acyclic cone
/// and by the rank formula, the rebuilt sum is homotopy equivalent, and the
/// k-dimensions of cohomology and of the minimal part are conserved.
pub fn barcode_suite<F: Field>(field: &F, cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    let alg = CoeffAlgebra::dual_numbers(field);
    let mut rep = SuiteReport::new("barcode");
    let mut csv = String::from("case,barcode\n");
    for i in 0..cfg.cases_or(200) {
        let mut rng = case_rng(cfg.seed, i as u64);
        let x = random_dual_complex(&alg, DualShape::default(), &mut rng);
        let d = barcode(&x)?;
        let cert = d.certify(&x);
        let equiv = homotopy_equivalent(&d.rebuilt, &x)?;
        let nonzero = |c: &PerfectComplex<F>| -> Result<Vec<(i32, usize)>, SuiteError> {
            Ok(c.cohomology_dims()?.into_iter().filter(|&(_, v)| v > 0).collect())
        };
        let same_h = nonzero(&x)? == nonzero(&d.rebuilt)?;
        let (total, kept) = (x.total_rank(), d.barcode.total_rank());
        let dims = total >= kept && (total - kept) % 2 == 0 && d.rebuilt.total_rank() == kept;
        csv.push_str(&format!("{i},\"{}\"\n", d.barcode));
        rep.push(CaseResult::new(
            format!("complex-{i}"),
            cert.is_ok() && equiv && same_h && dims,
            format!(
                "{} | certificate {} | equivalent {equiv} | same cohomology {same_h} | k-dim {} -> {} (+{} contractible pieces)",
                d.barcode,
                cert.map_or_else(|e| e.to_string(), |_| "ok".into()),
                2 * total,
                2 * kept,
                total.saturating_sub(kept) / 2
            ),
        ));
    }
    rep.artifacts.insert("barcode_cases.csv".into(), csv);
    Ok(rep)
}

fn auto_window<F: Field>(chi: &CohFunction<F>, t: &Triangle<F>) -> Result<i32, SuiteError> {
    let mut w = 1;
    for x in [&t.a, &t.b, &t.c] {
        for k in chi.profile(x)?.keys() {
            w = w.max(k.abs() + 2);
        }
    }
    Ok(w)
}

/// χ_X for 20 objects on 100 random cone triangles each, plus one bumped
/// strip table that must be rejected.
pub fn axioms_suite<F: Field>(field: &F, cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    let alg = CoeffAlgebra::dual_numbers(field);
    let mut rep = SuiteReport::new("axioms");
    let per = cfg.cases_or(100);
    let mut objects: Vec<PerfectComplex<F>> = [(0, 0), (0, 1), (-1, 2), (1, 3), (0, 0)]
        .iter()
        .map(|&(n, r)| PerfectComplex::string(&alg, n, r))
        .collect();
    objects[4] = objects[4].direct_sum(&PerfectComplex::string(&alg, 1, 1));
    let mut rng = case_rng(cfg.seed, 0);
    while objects.len() < 20 {
        let x = random_dual_complex(&alg, SMALL, &mut rng);
        if !barcode_by_ranks(&x)?.is_empty() {
            objects.push(x);
        }
    }
    let mut control = None;
    for (o, x) in objects.iter().enumerate() {
        let chi = CohFunction::of_complex(x)?;
        let mut bad = Vec::new();
        for j in 0..per {
            let mut rng = case_rng(cfg.seed, 1000 + (o * per + j) as u64);
            let t = random_cone_triangle(&alg, SMALL, &mut rng);
            let w = auto_window(&chi, &t)?;
            if let Some(v) = check_cohomological(&chi, &t, w)? {
                bad.push(format!("triangle {j}: {v:?}"));
            }
            if control.is_none() {
                let s = strip_table(&chi, &t, w)?;
                if s.values.iter().any(|&v| v > 0) {
                    control = Some(s);
                }
            }
        }
        rep.push(CaseResult::new(
            format!("object-{o}"),
            bad.is_empty(),
            if bad.is_empty() { format!("{per} triangles pass") } else { bad.join("; ") },
        ));
    }
    let mut rng = case_rng(cfg.seed, 1);
    match control {
        Some(mut s) => {
            let i = rng.gen_range(0..s.values.len());
            s.values[i] += 1;
            let caught = check_strip(&s);
            rep.push(CaseResult::new(
                "negative-control",
                caught.is_some(),
                format!("value at strip position {} bumped: {:?}", i as i64 + s.lo(), caught),
            ));
        }
        None => rep.push(CaseResult::new("negative-control", false, "no nonzero strip to mutate")),
    }
    Ok(rep)
}

/// Pairs of homotopy-equivalent triangles from contractible padding,
/// identity summands and unit basis changes satisfy the Schanuel identity.
pub fn schanuel_suite<F: Field>(field: &F, cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    let alg = CoeffAlgebra::dual_numbers(field);
    let mut rep = SuiteReport::new("schanuel");
    for i in 0..cfg.cases_or(100) {
        let mut rng = case_rng(cfg.seed, i as u64);
        let t = random_cone_triangle(&alg, SMALL, &mut rng);
        let d1 = random_dual_complex(&alg, SMALL, &mut rng);
        let d2 = random_dual_complex(&alg, SMALL, &mut rng);
        let mut t2 = t.clone();
        let mut steps = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            match rng.gen_range(0..3) {
                0 => {
                    t2 = mutate_add_contractible(&t2, &d1)?;
                    steps.push("pad");
                }
                1 => {
                    t2 = mutate_sum_with_identity(&t2, &d2)?;
                    steps.push("identity");
                }
                _ => {
                    t2 = mutate_scramble(&t2, &mut rng)?;
                    steps.push("scramble");
                }
            }
        }
        let equivalent = homotopy_equivalent(&t.a, &t2.a)? || steps.contains(&"identity");
        let ok = schanuel_triangle_check(&t, &t2)?;
        rep.push(CaseResult::new(format!("pair-{i}"), ok && equivalent, steps.join("+")));
    }
    Ok(rep)
}

/// Random modules over constructed algebras: the length equals the
/// dimension when E/rad E is one-dimensional, the general computation is
/// used otherwise, and length is additive. Oracle values at X_{0,0}.
pub fn endolength_suite<F: Field>(field: &F, cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new("endolength");
    let mut diverged = 0;
    for i in 0..cfg.cases_or(100) {
        let mut rng = case_rng(cfg.seed, i as u64);
        let e = random_end_algebra(field, &mut rng);
        let m = random_module(&e, &mut rng);
        let m2 = random_module(&e, &mut rng);
        let data = analyze(&e)?;
        let layers = data.length_by_layers(&m)?;
        let length = module_length(&e, &m)?;
        let sum = module_length(&e, &m.direct_sum(&m2))?;
        let additive = sum == length + module_length(&e, &m2)?;
        let fast_ok = data.top_dim() != 1 || layers == m.dim();
        if data.top_dim() != 1 && layers != m.dim() {
            diverged += 1;
        }
        rep.push(CaseResult::new(
            format!("module-{i}"),
            length == layers && fast_ok && additive,
            format!("dim E {} top {} dim M {} length {} layers {}", e.dim(), data.top_dim(), m.dim(), length, layers),
        ));
    }
    rep.push(CaseResult::new("divergence-witnessed", diverged > 0, format!("{diverged} modules with length != dim")));

    let alg = CoeffAlgebra::dual_numbers(field);
    let x = PerfectComplex::string(&alg, 0, 0);
    let chi_x = CohFunction::of_complex(&x)?.eval(&x)?;
    let hom = derived_hom_dim(&x, &x, 0)?;
    let end = EndAlgebra::new(&x)?;
    let hc = HomComplex::new(&x, &x)?;
    let h = hc.cohomology(0);
    let by_series = analyze(end.algebra())?.length_by_layers(&end.module_on_cohomology(&hc, &h, 0))?;
    let k = FinModule::residue(&alg, &PrimeDatum::DualMaximal)?;
    let chi_k = chi_of_module(&k)?.eval(&x)?;
    let chi_k_fibre = CohFunction::of_label(&alg, &Label::Simple { shift: 0 })?.eval(&x)?;
    rep.push(CaseResult::new(
        "oracle-X00",
        chi_x == 2 && hom == 2 && by_series == 2 && chi_k == 1 && chi_k_fibre == 1,
        format!("chi_X(X)={chi_x} dim Hom={hom} series={by_series} chi_k(X)={chi_k} fibre={chi_k_fibre}"),
    ));
    Ok(rep)
}
