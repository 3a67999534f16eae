use serde::Serialize;

use super::window::{closed_length_set_check, closure_extra_point_check, isolation_witnesses, ClosedSetReport, ClosureReport, Isolation, SpectrumWindow};
use super::SpectrumError;
use crate::cohfun::{Label, TableRow};
use crate::exactlin::Field;
use crate::perfcx::PerfectComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumRow {
    pub label: String,
    pub probe: String,
    pub shift: i32,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub distinct: bool,
    pub isolated_are_objects: bool,
    pub closure: ClosureReport,
    /// The closure statement is checked on the finite window only.
    pub closure_is_window_surrogate: bool,
    pub closed_length_sets: Vec<ClosedSetReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSummary {
    pub isolated: Vec<String>,
    pub limit_points: Vec<String>,
    pub witnesses: Vec<Isolation>,
    pub checks: Checks,
}

impl SpectrumSummary {
    pub fn passed(&self) -> bool {
        let c = &self.checks;
        c.distinct && c.isolated_are_objects && c.closure.ok() && c.closed_length_sets.iter().all(|r| r.violation.is_none())
    }
}

/// Every label on every probe and shift of the window, zeros included.
pub fn spectrum_rows<F: Field>(w: &SpectrumWindow<F>) -> Vec<SpectrumRow> {
    let s = w.shifts();
    let mut out = Vec::new();
    for i in 0..w.labels().len() {
        for (p, probe) in w.probes().iter().enumerate() {
            for k in -s..=s {
                out.push(SpectrumRow { label: w.label_name(i), probe: probe.name.clone(), shift: k, value: w.value(i, p, k) });
            }
        }
    }
    out
}

pub fn spectrum_csv(rows: &[SpectrumRow]) -> Result<String, SpectrumError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| SpectrumError::Format(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| SpectrumError::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| SpectrumError::Format(e.to_string()))
}

/// Isolated points, limit points and all window checks. The closed-set
/// check runs for every probe and every bound up to the largest value.
pub fn spectrum_summary<F: Field>(w: &SpectrumWindow<F>, closure_bound: usize) -> Result<SpectrumSummary, SpectrumError> {
    let witnesses = isolation_witnesses(w)?;
    let isolated: Vec<String> = witnesses.iter().filter(|i| i.witness.is_some()).map(|i| i.label.clone()).collect();
    let limit_points = witnesses.iter().filter(|i| i.witness.is_none()).map(|i| i.label.clone()).collect();
    let objects: Vec<String> =
        w.labels().iter().enumerate().filter(|(_, l)| matches!(l, Label::Object { .. })).map(|(i, _)| w.label_name(i)).collect();
    let mut closed = Vec::new();
    for p in w.probes() {
        let top = (0..w.labels().len()).map(|i| w.function(i).eval(&p.complex)).collect::<Result<Vec<_>, _>>()?;
        for n in 0..=top.into_iter().max().unwrap_or(0) {
            closed.push(closed_length_set_check(w, &p.complex, n)?);
        }
    }
    Ok(SpectrumSummary {
        checks: Checks {
            distinct: w.orbit_collision().is_none(),
            isolated_are_objects: isolated == objects,
            closure: closure_extra_point_check(w, closure_bound)?,
            closure_is_window_surrogate: true,
            closed_length_sets: closed,
        },
        isolated,
        limit_points,
        witnesses,
    })
}

/// χ-table rows of a single label, in the cohfun table format.
pub fn label_table<F: Field>(w: &SpectrumWindow<F>, i: usize) -> Vec<TableRow> {
    let s = w.shifts();
    w.probes()
        .iter()
        .enumerate()
        .flat_map(|(p, probe)| (-s..=s).map(move |k| TableRow { probe: probe.name.clone(), shift: k, value: w.value(i, p, k) }))
        .collect()
}

/// Membership of every label in (C).
pub fn open_set<F: Field>(w: &SpectrumWindow<F>, c: &PerfectComplex<F>) -> Result<Vec<String>, SpectrumError> {
    let mut out = Vec::new();
    for i in 0..w.labels().len() {
        if w.member(i, c)? {
            out.push(w.label_name(i));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffalg::CoeffAlgebra;
    use crate::exactlin::PrimeField;
    use crate::spectrum::enumerate_sp_dual_numbers;

    #[test]
    fn summary_for_small_window() {
        let a = CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap());
        let w = enumerate_sp_dual_numbers(&a, 3).unwrap();
        let s = spectrum_summary(&w, 8).unwrap();
        assert!(s.passed(), "{s:?}");
        assert_eq!(s.isolated.len(), 4);
        assert_eq!(s.limit_points, vec!["k".to_string()]);
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.starts_with("{\"isolated\":[\"X(0,0)\""));
        let csv = spectrum_csv(&spectrum_rows(&w)).unwrap();
        assert!(csv.starts_with("label,probe,shift,value\n"));
        assert_eq!(open_set(&w, &PerfectComplex::zero(&a)).unwrap(), Vec::<String>::new());
        assert_eq!(label_table(&w, 0).len(), 5 * 11);
    }
}
