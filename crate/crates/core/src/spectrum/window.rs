use std::sync::Arc;

use serde::Serialize;

use super::SpectrumError;
use crate::coeffalg::CoeffAlgebra;
use crate::cohfun::{extend_chi_shifts, simple_functor_eval, string_probes, CohFunction, Label, Probe, Profile};
use crate::exactlin::Field;
use crate::perfcx::{ar_triangle, cone, ChainMap, PerfectComplex, Triangle};

/// Finitely many Σ-orbit representatives evaluated on finitely many probes.
pub struct SpectrumWindow<F: Field> {
    alg: CoeffAlgebra<F>,
    labels: Vec<Label<F>>,
    functions: Vec<CohFunction<F>>,
    probes: Vec<Probe<F>>,
    shifts: i32,
    tables: Vec<Vec<Arc<Profile>>>,
}

impl<F: Field> SpectrumWindow<F> {
    /// Materializes the tables of `labels` on `probes`; shifts are read in ±`shifts`.
    pub fn new(alg: &CoeffAlgebra<F>, labels: Vec<Label<F>>, probes: Vec<Probe<F>>, shifts: i32) -> Result<Self, SpectrumError> {
        let functions = labels.iter().map(|l| CohFunction::of_label(alg, l)).collect::<Result<Vec<_>, _>>()?;
        let tables = functions
            .iter()
            .map(|f| probes.iter().map(|p| f.profile(&p.complex)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let w = SpectrumWindow { alg: alg.clone(), labels, functions, probes, shifts, tables };
        if let Some((i, j)) = w.orbit_collision() {
            return Err(SpectrumError::Collision(w.label_name(i), w.label_name(j)));
        }
        Ok(w)
    }

    pub fn algebra(&self) -> &CoeffAlgebra<F> {
        &self.alg
    }

    pub fn labels(&self) -> &[Label<F>] {
        &self.labels
    }

    pub fn probes(&self) -> &[Probe<F>] {
        &self.probes
    }

    pub fn shifts(&self) -> i32 {
        self.shifts
    }

    pub fn function(&self, i: usize) -> &CohFunction<F> {
        &self.functions[i]
    }

    pub fn label_name(&self, i: usize) -> String {
        self.labels[i].name(self.alg.field())
    }

    /// χ_label(Σ^k probe).
    pub fn value(&self, label: usize, probe: usize, k: i32) -> usize {
        self.tables[label][probe].get(&k).copied().unwrap_or(0)
    }

    /// Largest r among the object labels.
    pub fn r_max(&self) -> Option<usize> {
        self.labels.iter().filter_map(|l| if let Label::Object { r, .. } = l { Some(*r) } else { None }).max()
    }

    /// A pair of labels whose tables agree after some relative shift.
    pub fn orbit_collision(&self) -> Option<(usize, usize)> {
        let span = 2 * self.shifts + 1;
        for i in 0..self.labels.len() {
            for j in i + 1..self.labels.len() {
                let agree = |d: i32| {
                    (0..self.probes.len()).all(|p| {
                        let (a, b) = (&self.tables[i][p], &self.tables[j][p]);
                        a.len() == b.len() && a.iter().all(|(k, v)| b.get(&(k + d)) == Some(v))
                    })
                };
                if (-span..=span).any(agree) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Membership of label i in the basic open (Σ^m C) for some m, i.e. the
    /// profile of C is nonzero.
    pub fn member(&self, i: usize, c: &PerfectComplex<F>) -> Result<bool, SpectrumError> {
        Ok(!self.functions[i].profile(c)?.is_empty())
    }

    /// Membership of label i in (Σ^j F) for some |j| ≤ shifts.
    pub fn functor_member(&self, i: usize, f: &FunctorProbe<F>) -> Result<bool, SpectrumError> {
        let t = f.triangle(&self.alg)?;
        Ok(extend_chi_shifts(&self.functions[i], &t, -self.shifts..=self.shifts)?.iter().any(|&(_, v)| v > 0))
    }

    /// χ̂_label(F) with no shift.
    pub fn functor_value(&self, i: usize, f: &FunctorProbe<F>) -> Result<usize, SpectrumError> {
        let t = f.triangle(&self.alg)?;
        Ok(extend_chi_shifts(&self.functions[i], &t, 0..=0)?[0].1)
    }
}

/// The window {[χ_{X_{0,r}}] : r ≤ r_max} ∪ {[χ_k]} on the probes X_{0,s},
/// s ≤ r_max + 1, read in shifts |n| ≤ r_max + 2.
pub fn enumerate_sp_dual_numbers<F: Field>(alg: &CoeffAlgebra<F>, r_max: usize) -> Result<SpectrumWindow<F>, SpectrumError> {
    if !alg.is_dual_numbers() {
        return Err(SpectrumError::Unsupported("the enumerated spectrum is over k[e]".into()));
    }
    let labels = (0..=r_max).map(|r| Label::Object { n: 0, r }).chain([Label::Simple { shift: 0 }]).collect();
    SpectrumWindow::new(alg, labels, string_probes(alg, r_max + 1), r_max as i32 + 2)
}

/// [χ_label] ∈ (C): χ_label(Σ^n C) ≠ 0 for some n.
pub fn basic_open_membership<F: Field>(alg: &CoeffAlgebra<F>, label: &Label<F>, c: &PerfectComplex<F>) -> Result<bool, SpectrumError> {
    Ok(!CohFunction::of_label(alg, label)?.profile(c)?.is_empty())
}

/// A finitely presented functor given by a copresenting triangle.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctorProbe<F: Field> {
    /// The simple functor S_{n,r} at X_{n,r}.
    Simple { n: i32, r: usize },
    /// Hom(−, C).
    Representable { name: String, complex: PerfectComplex<F> },
}

impl<F: Field> FunctorProbe<F> {
    pub fn name(&self) -> String {
        match self {
            FunctorProbe::Simple { n, r } => format!("S({n},{r})"),
            FunctorProbe::Representable { name, .. } => format!("H[{name}]"),
        }
    }

    pub fn triangle(&self, alg: &CoeffAlgebra<F>) -> Result<Triangle<F>, SpectrumError> {
        Ok(match self {
            FunctorProbe::Simple { n, r } => ar_triangle(alg, n - 1, *r)?,
            FunctorProbe::Representable { complex, .. } => cone(&ChainMap::zero(complex, &PerfectComplex::zero(alg)))?,
        })
    }
}

/// A label together with the functor isolating it, if one was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isolation {
    pub label: String,
    pub witness: Option<String>,
    /// dim S(X) for the witnessing simple functor S and the object X of the label.
    pub simple_value: Option<usize>,
}

/// Candidate functors: the simple functors S_{0,s} and the representables of
/// the probes, in that order.
pub fn candidate_functors<F: Field>(w: &SpectrumWindow<F>) -> Vec<FunctorProbe<F>> {
    let s_max = w.r_max().unwrap_or(0) + 1;
    (0..=s_max)
        .map(|r| FunctorProbe::Simple { n: 0, r })
        .chain(w.probes().iter().map(|p| FunctorProbe::Representable { name: p.name.clone(), complex: p.complex.clone() }))
        .collect()
}

/// For every label, the first candidate functor whose basic open contains
/// the label and no other label of the window.
pub fn isolation_witnesses<F: Field>(w: &SpectrumWindow<F>) -> Result<Vec<Isolation>, SpectrumError> {
    let cands = candidate_functors(w);
    let n = w.labels().len();
    let member = cands
        .iter()
        .map(|f| (0..n).map(|i| w.functor_member(i, f)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    (0..n)
        .map(|i| {
            let hit = cands.iter().zip(&member).find(|(_, m)| m[i] && m.iter().filter(|&&b| b).count() == 1);
            let simple_value = match (hit.map(|(f, _)| f), &w.labels()[i]) {
                (Some(FunctorProbe::Simple { n, r }), Label::Object { n: m, r: s }) => {
                    Some(simple_functor_eval(w.algebra(), *n, *r, &PerfectComplex::string(w.algebra(), *m, *s))?)
                }
                _ => None,
            };
            Ok(Isolation { label: w.label_name(i), witness: hit.map(|(f, _)| f.name()), simple_value })
        })
        .collect()
}

/// Labels isolated by some candidate functor.
pub fn isolated_points<F: Field>(w: &SpectrumWindow<F>) -> Result<Vec<Label<F>>, SpectrumError> {
    Ok(isolation_witnesses(w)?
        .into_iter()
        .zip(w.labels())
        .filter(|(iso, _)| iso.witness.is_some())
        .map(|(_, l)| l.clone())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub vacuous: bool,
    /// (probe, shift) pairs on which χ_k is nonzero.
    pub neighbourhood: Vec<(String, i32)>,
    /// The smallest r ≤ R and a shift m with χ_{X_{m,r}} nonzero on every pair.
    pub hit: Option<(usize, i32)>,
    /// The same search restricted to r beyond the window.
    pub hit_outside_window: Option<(usize, i32)>,
}

impl ClosureReport {
    pub fn ok(&self) -> bool {
        self.vacuous || (self.hit.is_some() && self.hit_outside_window.is_some())
    }
}

/// The smallest neighbourhood of [χ_k] visible in the window, the
/// intersection of all (Σ^n C) with χ_k(Σ^n C) ≠ 0, contains some
/// [χ_{X_{0,r}}], r ≤ R, and one with r beyond the window's labels. Every
/// finite set of such conditions is implied by the full set.
pub fn closure_extra_point_check<F: Field>(w: &SpectrumWindow<F>, bound: usize) -> Result<ClosureReport, SpectrumError> {
    let Some(k) = w.labels().iter().position(|l| *l == Label::Simple { shift: 0 }) else {
        return Ok(ClosureReport { vacuous: true, neighbourhood: vec![], hit: None, hit_outside_window: None });
    };
    let s = w.shifts();
    let mut pairs = Vec::new();
    for p in 0..w.probes().len() {
        for n in -s..=s {
            if w.value(k, p, n) > 0 {
                pairs.push((p, n));
            }
        }
    }
    let r_max = w.r_max().unwrap_or(0);
    let mut hit = None;
    let mut hit_outside = None;
    for r in 0..=bound {
        let chi = CohFunction::of_complex(&PerfectComplex::string(w.algebra(), 0, r))?;
        let profiles = w.probes().iter().map(|p| chi.profile(&p.complex)).collect::<Result<Vec<_>, _>>()?;
        let reach = s + r as i32 + 1;
        // χ_{X_{m,r}}(Σ^n C) = χ_{X_{0,r}}(Σ^{n−m} C)
        let m = (-reach..=reach).find(|m| pairs.iter().all(|&(p, n)| profiles[p].get(&(n - m)).is_some_and(|&v| v > 0)));
        if let Some(m) = m {
            hit.get_or_insert((r, m));
            if r > r_max {
                hit_outside = Some((r, m));
                break;
            }
        }
    }
    Ok(ClosureReport {
        vacuous: false,
        neighbourhood: pairs.iter().map(|&(p, n)| (w.probes()[p].name.clone(), n)).collect(),
        hit,
        hit_outside_window: hit_outside,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedSetReport {
    /// Labels with χ(X) ≤ n.
    pub inside: Vec<String>,
    /// For each label outside, a functor F with χ̂(F) ≠ 0 for it and χ̂(F) = 0
    /// on every label inside.
    pub witnesses: Vec<(String, String)>,
    pub violation: Option<String>,
}

/// {χ : χ(X) ≤ n} is closed in the window: each label outside is separated
/// from it by a basic open. Candidates are Hom(−, Σ^m X), Hom(−, Σ^m C) for
/// the probes C, and the simple functors S_{m,s}, |m| ≤ shifts.
pub fn closed_length_set_check<F: Field>(w: &SpectrumWindow<F>, x: &PerfectComplex<F>, n: usize) -> Result<ClosedSetReport, SpectrumError> {
    let values = (0..w.labels().len()).map(|i| w.function(i).eval(x)).collect::<Result<Vec<_>, _>>()?;
    let inside: Vec<usize> = (0..values.len()).filter(|&i| values[i] <= n).collect();
    let s = w.shifts();
    let mut cands = Vec::new();
    for m in -s..=s {
        cands.push(FunctorProbe::Representable { name: format!("S^{m} X"), complex: x.shift(m) });
    }
    for p in w.probes() {
        for m in -s..=s {
            cands.push(FunctorProbe::Representable { name: format!("S^{m} {}", p.name), complex: p.complex.shift(m) });
        }
    }
    for r in 0..=w.r_max().unwrap_or(0) + 1 {
        for m in -s..=s {
            cands.push(FunctorProbe::Simple { n: m, r });
        }
    }
    let mut report = ClosedSetReport { inside: inside.iter().map(|&i| w.label_name(i)).collect(), witnesses: vec![], violation: None };
    for i in (0..values.len()).filter(|i| !inside.contains(i)) {
        let mut found = None;
        for f in &cands {
            if w.functor_value(i, f)? == 0 {
                continue;
            }
            if inside.iter().map(|&u| w.functor_value(u, f)).collect::<Result<Vec<_>, _>>()?.iter().all(|&v| v == 0) {
                found = Some(f.name());
                break;
            }
        }
        match found {
            Some(f) => report.witnesses.push((w.label_name(i), f)),
            None => {
                report.violation = Some(w.label_name(i));
                break;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;

    fn dual() -> CoeffAlgebra<PrimeField> {
        CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
    }

    #[test]
    fn window_sizes_and_distinctness() {
        let a = dual();
        assert_eq!(enumerate_sp_dual_numbers(&a, 0).unwrap().labels().len(), 2);
        let w = enumerate_sp_dual_numbers(&a, 3).unwrap();
        assert_eq!(w.labels().len(), 5);
        assert_eq!(w.orbit_collision(), None);
        let poly = CoeffAlgebra::poly_ring(&PrimeField::new(5).unwrap());
        assert!(enumerate_sp_dual_numbers(&poly, 1).is_err());
    }

    #[test]
    fn basic_opens() {
        let a = dual();
        let k = Label::Simple { shift: 0 };
        let x00 = Label::Object { n: 0, r: 0 };
        assert!(basic_open_membership(&a, &k, &PerfectComplex::string(&a, 0, 5)).unwrap());
        assert!(!basic_open_membership(&a, &x00, &PerfectComplex::zero(&a)).unwrap());
        assert!(basic_open_membership(&a, &x00, &PerfectComplex::string(&a, 0, 0)).unwrap());
    }

    #[test]
    fn shifted_functor_values_match_shifted_labels() {
        let a = dual();
        let w = enumerate_sp_dual_numbers(&a, 2).unwrap();
        let t = ar_triangle(&a, 0, 1).unwrap();
        for (i, l) in w.labels().iter().enumerate() {
            for (j, v) in extend_chi_shifts(w.function(i), &t, -3..=3).unwrap() {
                let shifted = CohFunction::of_label(&a, &l.precompose_shift(j)).unwrap();
                assert_eq!(v, crate::cohfun::extend_chi(&shifted, &t, 12).unwrap(), "{} at {j}", w.label_name(i));
            }
        }
    }

    #[test]
    fn isolated_points_are_the_objects() {
        let a = dual();
        let w = enumerate_sp_dual_numbers(&a, 3).unwrap();
        let iso = isolated_points(&w).unwrap();
        assert_eq!(iso, (0..=3).map(|r| Label::Object { n: 0, r }).collect::<Vec<_>>());
        let wit = isolation_witnesses(&w).unwrap();
        assert_eq!(wit[1].witness.as_deref(), Some("S(0,1)"));
        assert_eq!(wit[1].simple_value, Some(1));
        assert_eq!(wit[4].witness, None);
        let empty = SpectrumWindow::new(&a, vec![], string_probes(&a, 1), 2).unwrap();
        assert!(isolated_points(&empty).unwrap().is_empty());
    }

    #[test]
    fn closure_point() {
        let a = dual();
        let w = enumerate_sp_dual_numbers(&a, 3).unwrap();
        let rep = closure_extra_point_check(&w, 8).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert!(!closure_extra_point_check(&w, 3).unwrap().ok());
        for r in 0..=4 {
            let w = enumerate_sp_dual_numbers(&a, r).unwrap();
            assert!(closure_extra_point_check(&w, 2 * r + 2).unwrap().ok(), "r_max = {r}");
        }
        let no_k = SpectrumWindow::new(&a, vec![Label::Object { n: 0, r: 0 }], string_probes(&a, 1), 2).unwrap();
        assert!(closure_extra_point_check(&no_k, 2).unwrap().ok());
    }

    #[test]
    fn closed_length_sets() {
        let a = dual();
        let w = enumerate_sp_dual_numbers(&a, 3).unwrap();
        let x = PerfectComplex::string(&a, 0, 0);
        let one = closed_length_set_check(&w, &x, 1).unwrap();
        assert!(one.inside.contains(&"k".to_string()) && !one.inside.contains(&"X(0,0)".to_string()));
        assert_eq!(one.violation, None);
        let zero = closed_length_set_check(&w, &x, 0).unwrap();
        assert_eq!(zero.violation, None);
        let all = closed_length_set_check(&w, &x, 100).unwrap();
        assert!(all.witnesses.is_empty() && all.inside.len() == 5);
    }
}
