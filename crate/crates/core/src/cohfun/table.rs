use std::ops::RangeInclusive;

use serde::Serialize;

use super::function::{CohFunction, Profile};
use super::CohfunError;
use crate::coeffalg::CoeffAlgebra;
use crate::exactlin::Field;
use crate::perfcx::{homotopy_equivalent, HomComplex, PerfectComplex};

/// A named test object.
#[derive(Clone, Debug, PartialEq)]
pub struct Probe<F: Field> {
    pub name: String,
    pub complex: PerfectComplex<F>,
}

/// The strings X_{0,s}, s ≤ s_max.
pub fn string_probes<F: Field>(alg: &CoeffAlgebra<F>, s_max: usize) -> Vec<Probe<F>> {
    (0..=s_max).map(|s| Probe { name: format!("X(0,{s})"), complex: PerfectComplex::string(alg, 0, s) }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub probe: String,
    pub shift: i32,
    pub value: usize,
}

/// χ(Σ^shift C) for every probe C and shift in range, zeros included.
pub fn chi_table<F: Field>(chi: &CohFunction<F>, probes: &[Probe<F>], shifts: RangeInclusive<i32>) -> Result<Vec<TableRow>, CohfunError> {
    let mut out = Vec::new();
    for p in probes {
        let prof = chi.profile(&p.complex)?;
        for k in shifts.clone() {
            out.push(TableRow { probe: p.name.clone(), shift: k, value: prof.get(&k).copied().unwrap_or(0) });
        }
    }
    Ok(out)
}

pub fn chi_table_csv(rows: &[TableRow]) -> Result<String, CohfunError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CohfunError::Csv(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CohfunError::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CohfunError::Csv(e.to_string()))
}

/// k ↦ dim_k Hom(Σ^k C, X).
pub fn hom_length_profile<F: Field>(c: &PerfectComplex<F>, x: &PerfectComplex<F>) -> Result<Profile, CohfunError> {
    let hc = HomComplex::new(c, x)?;
    Ok(hc.cohomology_profile().into_iter().filter(|&(_, d)| d > 0).map(|(n, d)| (-n, d)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub equal_lengths: bool,
    pub homotopy_equivalent: bool,
}

impl IsoVerdict {
    pub fn agrees(&self) -> bool {
        self.equal_lengths == self.homotopy_equivalent
    }
}

/// Compares the k-lengths of Hom(Σ^k C, X) and Hom(Σ^k C, Y) over all
/// probes and all shifts, and decides homotopy equivalence independently.
pub fn lengths_determine_iso<F: Field>(
    x: &PerfectComplex<F>,
    y: &PerfectComplex<F>,
    probes: &[PerfectComplex<F>],
) -> Result<IsoVerdict, CohfunError> {
    let mut equal_lengths = true;
    for c in probes {
        if hom_length_profile(c, x)? != hom_length_profile(c, y)? {
            equal_lengths = false;
            break;
        }
    }
    Ok(IsoVerdict { equal_lengths, homotopy_equivalent: homotopy_equivalent(x, y)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::perfcx::{cone, ChainMap};

    fn dual() -> CoeffAlgebra<PrimeField> {
        CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
    }

    #[test]
    fn table_and_csv() {
        let a = dual();
        let chi = CohFunction::of_complex(&PerfectComplex::string(&a, 0, 0)).unwrap();
        let rows = chi_table(&chi, &string_probes(&a, 1), -1..=1).unwrap();
        assert!(rows.contains(&TableRow { probe: "X(0,0)".into(), shift: 0, value: 2 }));
        let csv = chi_table_csv(&rows).unwrap();
        assert!(csv.starts_with("probe,shift,value\n\"X(0,0)\",-1,0\n\"X(0,0)\",0,2\n"), "{csv}");
        let zero = CohFunction::of_complex(&PerfectComplex::zero(&a)).unwrap();
        assert!(chi_table(&zero, &string_probes(&a, 2), -2..=2).unwrap().iter().all(|r| r.value == 0));
    }

    #[test]
    fn iso_examples() {
        let a = dual();
        let probes: Vec<_> = (-4..=4).flat_map(|m| (0..=4).map(move |s| (m, s))).map(|(m, s)| PerfectComplex::string(&a, m, s)).collect();
        let x = PerfectComplex::string(&a, 0, 2);
        assert_eq!(lengths_determine_iso(&x, &x, &probes).unwrap(), IsoVerdict { equal_lengths: true, homotopy_equivalent: true });
        let y = PerfectComplex::string(&a, 0, 0).direct_sum(&PerfectComplex::string(&a, 1, 0));
        let v = lengths_determine_iso(&PerfectComplex::string(&a, 0, 1), &y, &probes).unwrap();
        assert_eq!(v, IsoVerdict { equal_lengths: false, homotopy_equivalent: false });
        let padded = x.direct_sum(&cone(&ChainMap::identity(&PerfectComplex::string(&a, 1, 1))).unwrap().c);
        assert_eq!(lengths_determine_iso(&x, &padded, &probes).unwrap(), IsoVerdict { equal_lengths: true, homotopy_equivalent: true });
    }
}
