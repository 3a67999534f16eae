use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::{CaseResult, RunConfig, SuiteError, SuiteReport};
use crate::coeffalg::CoeffAlgebra;
use crate::cohfun::{hom_length_profile, lengths_determine_iso};
use crate::exactlin::{Field, Matrix, Rationals};
use crate::perfcx::{barcode_by_ranks, PerfectComplex};
use crate::random::{case_rng, scramble};

const N_RANGE: i32 = 2;
const R_MAX: usize = 2;
const S_MAX: usize = 4;
const M_RANGE: i32 = 4;
const ENTRY_MAX: u8 = 2;

/// dim_k Hom(Σ^m X_{0,s}, X_{n,r}) for the labels (n, r) and rows (s, m).
pub struct Theorem1Data {
    pub labels: Vec<(i32, usize)>,
    pub rows: Vec<(usize, i32)>,
    pub matrix: Vec<Vec<i64>>,
}

pub fn hom_dim_matrix<F: Field>(alg: &CoeffAlgebra<F>) -> Result<Theorem1Data, SuiteError> {
    let labels: Vec<(i32, usize)> = (-N_RANGE..=N_RANGE).flat_map(|n| (0..=R_MAX).map(move |r| (n, r))).collect();
    let rows: Vec<(usize, i32)> = (0..=S_MAX).flat_map(|s| (-M_RANGE..=M_RANGE).map(move |m| (s, m))).collect();
    let mut matrix = vec![vec![0i64; labels.len()]; rows.len()];
    for (j, &(n, r)) in labels.iter().enumerate() {
        let x = PerfectComplex::string(alg, n, r);
        for s in 0..=S_MAX {
            let prof = hom_length_profile(&PerfectComplex::string(alg, 0, s), &x)?;
            for (i, &(s2, m)) in rows.iter().enumerate() {
                if s2 == s {
                    matrix[i][j] = prof.get(&m).copied().unwrap_or(0) as i64;
                }
            }
        }
    }
    Ok(Theorem1Data { labels, rows, matrix })
}

impl Theorem1Data {
    fn table(&self, v: &[u8]) -> Vec<i64> {
        self.matrix.iter().map(|row| row.iter().zip(v).map(|(a, &b)| a * b as i64).sum()).collect()
    }

    fn rational(&self) -> Matrix<Rationals> {
        let q = Rationals;
        Matrix::from_rows(&q, self.labels.len(), self.matrix.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect())
    }

    /// Rows S with M_S invertible, and (A, L) with A = L·M_S^{-1} integral.
    fn decoder(&self) -> Option<(Vec<usize>, Vec<Vec<i64>>, i64)> {
        let q = Rationals;
        let pivots = self.rational().transpose().pivot_columns();
        if pivots.len() < self.labels.len() {
            return None;
        }
        let ms = self.rational().select_rows(&pivots);
        let inv = ms.inverse()?;
        let mut l = BigInt::one();
        for e in inv.data() {
            l = l.lcm(e.denom());
        }
        let lr = BigRational::from_integer(l.clone());
        let n = self.labels.len();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let v = q.mul(inv.get(i, j), &lr);
                *x = v.to_integer().to_i64()?;
            }
        }
        Some((pivots, a, l.to_i64()?))
    }
}

/// Enumerates {0..=2}^15 in 9 chunks and decodes every table restricted to
/// the rows S; returns the number of vectors and of decoding failures.
fn exhaustive_decode(data: &Theorem1Data, rows: &[usize], a: &[Vec<i64>], l: i64) -> (u64, u64) {
    let n = data.labels.len();
    let cols: Vec<Vec<i64>> = (0..n).map(|j| rows.iter().map(|&i| data.matrix[i][j]).collect()).collect();
    let base = ENTRY_MAX as usize + 1;
    let chunk = |prefix: [u8; 2]| -> (u64, u64) {
        let mut v = vec![0u8; n];
        v[0] = prefix[0];
        v[1] = prefix[1];
        let mut t: Vec<i64> = (0..n).map(|i| cols[0][i] * v[0] as i64 + cols[1][i] * v[1] as i64).collect();
        let (mut count, mut bad) = (0u64, 0u64);
        loop {
            count += 1;
            for (i, row) in a.iter().enumerate() {
                let u: i64 = row.iter().zip(&t).map(|(x, y)| x * y).sum();
                if u != l * v[i] as i64 {
                    bad += 1;
                    break;
                }
            }
            let mut k = 2;
            loop {
                if k == n {
                    return (count, bad);
                }
                if (v[k] as usize) + 1 < base {
                    v[k] += 1;
                    for (x, c) in t.iter_mut().zip(&cols[k]) {
                        *x += c;
                    }
                    break;
                }
                for (x, c) in t.iter_mut().zip(&cols[k]) {
                    *x -= c * v[k] as i64;
                }
                v[k] = 0;
                k += 1;
            }
        }
    };
    let prefixes: Vec<[u8; 2]> = (0..base as u8).flat_map(|x| (0..base as u8).map(move |y| [x, y])).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = prefixes.iter().map(|&p| s.spawn(move || chunk(p))).collect();
        handles.into_iter().map(|h| h.join().expect("worker")).fold((0, 0), |acc, x| (acc.0 + x.0, acc.1 + x.1))
    })
}

fn realize<F: Field>(alg: &CoeffAlgebra<F>, labels: &[(i32, usize)], v: &[u8]) -> PerfectComplex<F> {
    let parts: Vec<PerfectComplex<F>> = labels
        .iter()
        .zip(v)
        .flat_map(|(&(n, r), &m)| std::iter::repeat_n(PerfectComplex::string(alg, n, r), m as usize))
        .collect();
    PerfectComplex::direct_sum_all(alg, &parts)
}

/// Equal k-length tables on {Σ^m X_{0,s}} ⟺ equal barcodes, for all
/// multiplicity vectors on {|n| ≤ 2, r ≤ 2} with entries ≤ 2.
pub fn theorem1_suite<F: Field>(field: &F, cfg: &RunConfig) -> Result<SuiteReport, SuiteError> {
    let alg = CoeffAlgebra::dual_numbers(field);
    let mut rep = SuiteReport::new("theorem1");
    let data = hom_dim_matrix(&alg)?;
    let n = data.labels.len();

    let mut csv = String::from("label,probe,shift,dim\n");
    for (j, &(ln, lr)) in data.labels.iter().enumerate() {
        for (i, &(s, m)) in data.rows.iter().enumerate() {
            csv.push_str(&format!("\"X({ln},{lr})\",\"X(0,{s})\",{m},{}\n", data.matrix[i][j]));
        }
    }
    rep.artifacts.insert("theorem1_table.csv".into(), csv);

    let rank = data.rational().rank();
    rep.push(CaseResult::new("rank", rank == n, format!("rank over Q of the {}x{} table is {rank}", data.rows.len(), n)));

    match data.decoder() {
        Some((rows, a, l)) => {
            let (count, bad) = exhaustive_decode(&data, &rows, &a, l);
            let expected = (ENTRY_MAX as u64 + 1).pow(n as u32);
            rep.push(CaseResult::new(
                "exhaustive",
                bad == 0 && count == expected,
                format!("{count} multiplicity vectors decoded from {} table rows, {bad} failures", rows.len()),
            ));
        }
        None => rep.push(CaseResult::new("exhaustive", false, "no integral decoder: the table rows do not have full rank")),
    }

    // sampled pairs, deduplicated, a third of them near-duplicates
    let mut rng = case_rng(cfg.seed, 0);
    let target = cfg.cases_or(19683);
    let mut pairs = BTreeSet::new();
    let mut draws = 0;
    while pairs.len() < target && draws < 4 * target {
        draws += 1;
        let v: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=ENTRY_MAX)).collect();
        let w = match rng.gen_range(0..3) {
            0 => v.clone(),
            1 => {
                let mut w = v.clone();
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if w[i] > 0 && w[j] < ENTRY_MAX {
                    w[i] -= 1;
                    w[j] += 1;
                }
                w
            }
            _ => (0..n).map(|_| rng.gen_range(0..=ENTRY_MAX)).collect(),
        };
        pairs.insert(if v <= w { (v, w) } else { (w, v) });
    }
    let mut disc = 0;
    let mut equal = 0;
    for (v, w) in &pairs {
        let same_tables = data.table(v) == data.table(w);
        equal += usize::from(v == w);
        if same_tables != (v == w) {
            disc += 1;
        }
    }
    rep.push(CaseResult::new(
        "sampled-pairs",
        disc == 0,
        format!("{} distinct pairs ({equal} equal), {disc} discrepancies", pairs.len()),
    ));

    // realized pairs: scrambled direct sums, tables computed from Hom complexes
    let probes: Vec<PerfectComplex<F>> = (0..=S_MAX).map(|s| PerfectComplex::string(&alg, 0, s)).collect();
    let iso_probes: Vec<PerfectComplex<F>> = (-M_RANGE..=M_RANGE).flat_map(|m| probes.iter().map(move |p| p.shift(m))).collect();
    for case in 0..12u64 {
        let mut rng = case_rng(cfg.seed, 1 + case);
        let v: Vec<u8> = (0..n).map(|_| if rng.gen_bool(0.3) { rng.gen_range(1..=ENTRY_MAX) } else { 0 }).collect();
        let w: Vec<u8> = match case % 3 {
            0 => v.clone(),
            1 => {
                let mut w = v.clone();
                let i = rng.gen_range(0..n);
                w[i] = (w[i] + 1) % (ENTRY_MAX + 1);
                w
            }
            _ => (0..n).map(|_| if rng.gen_bool(0.3) { rng.gen_range(1..=ENTRY_MAX) } else { 0 }).collect(),
        };
        let x = scramble(&realize(&alg, &data.labels, &v), &mut rng);
        let y = scramble(&realize(&alg, &data.labels, &w), &mut rng);
        let direct = |c: &PerfectComplex<F>| -> Result<Vec<i64>, SuiteError> {
            let mut t = Vec::new();
            for p in &probes {
                let prof = hom_length_profile(p, c)?;
                t.extend((-M_RANGE..=M_RANGE).map(|m| prof.get(&m).copied().unwrap_or(0) as i64));
            }
            Ok(t)
        };
        let (tx, ty) = (direct(&x)?, direct(&y)?);
        let additive = tx == data.table(&v) && ty == data.table(&w);
        let same_bars = barcode_by_ranks(&x)? == barcode_by_ranks(&y)?;
        let verdict = lengths_determine_iso(&x, &y, &iso_probes)?;
        let ok = additive && (tx == ty) == same_bars && verdict.agrees() && same_bars == (v == w);
        rep.push(CaseResult::new(
            format!("realized-{case}"),
            ok,
            format!("additive={additive} equal_tables={} equal_barcodes={same_bars} iso_verdict_agrees={}", tx == ty, verdict.agrees()),
        ));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;

    #[test]
    fn table_has_full_rank() {
        let a = CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap());
        let d = hom_dim_matrix(&a).unwrap();
        assert_eq!(d.rational().rank(), 15);
        let (rows, m, l) = d.decoder().unwrap();
        assert_eq!(rows.len(), 15);
        assert!(l > 0 && m.len() == 15);
    }
}
