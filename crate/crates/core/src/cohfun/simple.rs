use std::collections::BTreeMap;

use num_rational::BigRational;

use super::axioms::extend_chi;
use super::function::{CohFunction, Label, Profile};
use super::CohfunError;
use crate::coeffalg::CoeffAlgebra;
use crate::exactlin::{Field, Matrix, Rationals};
use crate::perfcx::{ar_triangle, derived_hom_dim, induced_post, ChainMap, HomComplex, PerfectComplex};

/// dim ker(Hom(Σ^{-n}C, A) → Hom(Σ^{-n}C, B)) for f: A → B, i.e. the value at
/// Σ^{-n}C of the functor ker(Hom(−, f)).
pub fn functor_kernel_dim<F: Field>(f: &ChainMap<F>, c: &PerfectComplex<F>, n: i32) -> Result<usize, CohfunError> {
    let from = HomComplex::new(c, f.source())?;
    let to = HomComplex::new(c, f.target())?;
    let (hf, ht) = (from.cohomology(n), to.cohomology(n));
    if hf.dim() == 0 {
        return Ok(0);
    }
    Ok(hf.dim() - induced_post(&from, &hf, &to, &ht, f, n).rank())
}

/// dim S_{n,r}(C), where S_{n,r} is the simple socle of Hom(−, X_{n,r}):
/// the kernel of Hom(C, X_{n,r}) → Hom(C, B) along the first map of the
/// Auslander–Reiten triangle starting at X_{n,r}.
pub fn simple_functor_eval<F: Field>(alg: &CoeffAlgebra<F>, n: i32, r: usize, c: &PerfectComplex<F>) -> Result<usize, CohfunError> {
    let t = ar_triangle(alg, n - 1, r)?;
    functor_kernel_dim(&t.f, c, 0)
}

/// S_{n+1,r}(C) − H_{X_{n+1,r}}(C) + H_B(C) − H_{X_{n,r}}(C) + S_{n,r}(C)
/// along the Auslander–Reiten triangle X_{n+1,r} → B → X_{n,r} → ΣX_{n+1,r}.
pub fn five_term_sum<F: Field>(alg: &CoeffAlgebra<F>, n: i32, r: usize, c: &PerfectComplex<F>) -> Result<i64, CohfunError> {
    let t = ar_triangle(alg, n, r)?;
    let top = functor_kernel_dim(&t.f, c, 0)? as i64;
    let bottom = simple_functor_eval(alg, n, r, c)? as i64;
    let h = |y: &PerfectComplex<F>| derived_hom_dim(c, y, 0).map(|d| d as i64);
    Ok(top - h(&t.a)? + h(&t.b)? - h(&t.c)? + bottom)
}

fn window_for<F: Field>(chi: &CohFunction<F>, objs: &[&PerfectComplex<F>]) -> Result<i32, CohfunError> {
    let mut w = 1;
    for x in objs {
        for k in chi.profile(x)?.keys() {
            w = w.max(k.abs() + 1);
        }
    }
    Ok(w)
}

/// Multiplicities m with χ = Σ m_ℓ χ_ℓ over `basis`, checked on every shift
/// of every probe.
///
/// The multiplicity of χ_{X_{n,r}} is χ̂(S_{n,r}), read off the
/// Auslander–Reiten triangle through the extension to functors; χ_k and its
/// shifts vanish on these finite-length functors. The remaining multiplicity
/// of Σ^s k is the residual value at Σ^s X_{0,0}. Labels are visited by
/// (r, n) and peeled in that order. Uniqueness over the probe window is
/// asserted by a full-column-rank check of the evaluation matrix.
pub fn decompose_chi<F: Field>(
    chi: &CohFunction<F>,
    basis: &[Label<F>],
    probes: &[PerfectComplex<F>],
) -> Result<Vec<(Label<F>, usize)>, CohfunError> {
    let alg = chi.algebra();
    if !alg.is_dual_numbers() {
        return Err(CohfunError::Unsupported("decomposition is implemented over k[e]".into()));
    }
    let mut basis = basis.to_vec();
    basis.sort();
    basis.dedup();
    let mut found: Vec<(Label<F>, usize)> = Vec::new();
    for l in basis.iter() {
        if let Label::Object { n, r } = *l {
            let t = ar_triangle(alg, n - 1, r)?;
            let w = window_for(chi, &[&t.a, &t.b, &t.c])?;
            let m = extend_chi(chi, &t, w)?;
            if m > 0 {
                found.push((l.clone(), m));
            }
        }
    }
    let objects = CohFunction::combo(alg, &found)?;
    let x00 = PerfectComplex::string(alg, 0, 0);
    let (have, peeled) = (chi.profile(&x00)?, objects.profile(&x00)?);
    for l in basis.iter() {
        if let Label::Simple { shift } = *l {
            let v = have.get(&shift).copied().unwrap_or(0);
            let p = peeled.get(&shift).copied().unwrap_or(0);
            if v > p {
                found.push((l.clone(), v - p));
            }
        }
    }
    if basis.iter().any(|l| matches!(l, Label::Residue { .. })) {
        return Err(CohfunError::Unsupported("residue labels are not part of the k[e] basis".into()));
    }
    let rebuilt = CohFunction::combo(alg, &found)?;
    let mut residual = Vec::new();
    for (i, c) in probes.iter().enumerate() {
        let (want, got) = (chi.profile(c)?, rebuilt.profile(c)?);
        if want != got {
            residual.push(format!("probe {i}: expected {:?}, rebuilt {:?}", *want, *got));
        }
    }
    if !residual.is_empty() {
        return Err(CohfunError::BasisInsufficient { residual: residual.join("; ") });
    }
    unique_on_probes(alg, &basis, probes)?;
    found.sort();
    Ok(found)
}

/// The evaluation matrix (probe, shift) × label has full column rank over Q.
fn unique_on_probes<F: Field>(alg: &CoeffAlgebra<F>, basis: &[Label<F>], probes: &[PerfectComplex<F>]) -> Result<(), CohfunError> {
    let mut rows: BTreeMap<(usize, i32), Vec<usize>> = BTreeMap::new();
    for (j, l) in basis.iter().enumerate() {
        let f = CohFunction::of_label(alg, l)?;
        for (i, c) in probes.iter().enumerate() {
            let p: std::sync::Arc<Profile> = f.profile(c)?;
            for (&k, &v) in p.iter() {
                rows.entry((i, k)).or_insert_with(|| vec![0; basis.len()])[j] = v;
            }
        }
    }
    let q = Rationals;
    let m = Matrix::from_rows(
        &q,
        basis.len(),
        rows.values().map(|r| r.iter().map(|&v| BigRational::from_integer((v as i64).into())).collect()).collect(),
    );
    if m.rank() < basis.len() {
        return Err(CohfunError::BasisInsufficient {
            residual: format!("probe window separates only {} of {} basis functions", m.rank(), basis.len()),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;

    fn dual() -> CoeffAlgebra<PrimeField> {
        CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
    }

    fn probes(a: &CoeffAlgebra<PrimeField>, s_max: usize) -> Vec<PerfectComplex<PrimeField>> {
        (0..=s_max).map(|s| PerfectComplex::string(a, 0, s)).collect()
    }

    #[test]
    fn simple_functor_is_a_delta() {
        let a = dual();
        for (n, r) in [(0, 0), (0, 1), (1, 2), (-1, 0)] {
            for m in -2..=2 {
                for s in 0..=3 {
                    let v = simple_functor_eval(&a, n, r, &PerfectComplex::string(&a, m, s)).unwrap();
                    assert_eq!(v, usize::from((m, s) == (n, r)), "S({n},{r}) at X({m},{s})");
                    assert_eq!(five_term_sum(&a, n, r, &PerfectComplex::string(&a, m, s)).unwrap(), 0);
                }
            }
            assert_eq!(simple_functor_eval(&a, n, r, &PerfectComplex::zero(&a)).unwrap(), 0);
        }
    }

    #[test]
    fn decompose_examples() {
        let a = dual();
        let basis: Vec<Label<PrimeField>> = (-2..=2)
            .flat_map(|n| (0..=4).map(move |r| Label::Object { n, r }))
            .chain((-3..=3).map(|s| Label::Simple { shift: s }))
            .collect();
        let pr = probes(&a, 6);
        let h = PerfectComplex::string(&a, 0, 0).direct_sum(&PerfectComplex::string(&a, 0, 1));
        let d = decompose_chi(&CohFunction::of_complex(&h).unwrap(), &basis, &pr).unwrap();
        assert_eq!(d, vec![(Label::Object { n: 0, r: 0 }, 1), (Label::Object { n: 0, r: 1 }, 1)]);
        let x = PerfectComplex::string(&a, 1, 2);
        let d = decompose_chi(&CohFunction::of_complex(&x.direct_sum(&x)).unwrap(), &basis, &pr).unwrap();
        assert_eq!(d, vec![(Label::Object { n: 1, r: 2 }, 1)]);
        let combo = CohFunction::combo(&a, &[(Label::Simple { shift: 0 }, 3), (Label::Object { n: 0, r: 4 }, 2)]).unwrap();
        let d = decompose_chi(&combo, &basis, &pr).unwrap();
        assert_eq!(d, vec![(Label::Simple { shift: 0 }, 3), (Label::Object { n: 0, r: 4 }, 2)]);
    }

    #[test]
    fn missing_label_is_reported() {
        let a = dual();
        let chi = CohFunction::of_complex(&PerfectComplex::string(&a, 0, 3)).unwrap();
        let basis = vec![Label::Object { n: 0, r: 0 }, Label::Simple { shift: 0 }];
        assert!(matches!(decompose_chi(&chi, &basis, &probes(&a, 4)), Err(CohfunError::BasisInsufficient { .. })));
    }
}
