//! Barcodes of complexes over k[ε].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::complex::{ChainMap, PerfectComplex};
use super::minimal::minimal_model;
use super::PerfcxError;
use crate::coeffalg::AlgMatrix;
use crate::exactlin::{Field, Matrix};

/// The label (n, r) of X_{n,r}: k[ε] in degrees n..=n+r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bar {
    pub n: i32,
    pub r: usize,
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({},{})", self.n, self.r)
    }
}

/// A finite multiset of bars.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Barcode(BTreeMap<Bar, usize>);

impl Barcode {
    pub fn new() -> Self {
        Barcode(BTreeMap::new())
    }

    pub fn single(n: i32, r: usize) -> Self {
        Barcode(BTreeMap::from([(Bar { n, r }, 1)]))
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (Bar, usize)>) -> Self {
        let mut b = Barcode::new();
        for (bar, m) in counts {
            b.add(bar, m);
        }
        b
    }

    pub fn add(&mut self, bar: Bar, mult: usize) {
        if mult > 0 {
            *self.0.entry(bar).or_insert(0) += mult;
        }
    }

    pub fn merge(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&b, &m) in &other.0 {
            out.add(b, m);
        }
        out
    }

    pub fn multiplicity(&self, n: i32, r: usize) -> usize {
        self.0.get(&Bar { n, r }).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Bar, usize> {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of indecomposable summands.
    pub fn count(&self) -> usize {
        self.0.values().sum()
    }

    /// Total rank of the minimal model: Σ mult·(r + 1).
    pub fn total_rank(&self) -> usize {
        self.0.iter().map(|(b, m)| m * (b.r + 1)).sum()
    }

    /// The bars shifted by Σ^m.
    pub fn shift(&self, m: i32) -> Self {
        Barcode(self.0.iter().map(|(b, &k)| (Bar { n: b.n - m, r: b.r }, k)).collect())
    }

    /// ⊕ X_{n,r}^{mult} in bar order.
    pub fn realize<F: Field>(&self, alg: &crate::coeffalg::CoeffAlgebra<F>) -> PerfectComplex<F> {
        let parts: Vec<PerfectComplex<F>> = self
            .0
            .iter()
            .flat_map(|(b, &m)| std::iter::repeat_n(PerfectComplex::string(alg, b.n, b.r), m))
            .collect();
        PerfectComplex::direct_sum_all(alg, &parts)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|(b, m)| serde_json::json!({"n": b.n, "r": b.r, "multiplicity": m}))
                .collect(),
        )
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(b, m)| if *m == 1 { b.to_string() } else { format!("{b}^{m}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// ε-coefficients M_i of the differentials of a minimal complex over k[ε].
fn reductions<F: Field>(min: &PerfectComplex<F>) -> BTreeMap<i32, Matrix<F>> {
    let f = min.field();
    min.diffs().iter().map(|(&i, d)| (i, d.coefficient(f, 1))).collect()
}

fn require_dual<F: Field>(x: &PerfectComplex<F>) -> Result<(), PerfcxError> {
    if x.algebra().is_dual_numbers() {
        Ok(())
    } else {
        Err(PerfcxError::Unsupported(format!("barcodes need k[e], got {}", x.algebra().name())))
    }
}

/// Interval multiplicities from ranks of composites of the M_i:
/// m[a,b] = r(a,b) − r(a−1,b) − r(a,b+1) + r(a−1,b+1).
pub fn barcode_by_ranks<F: Field>(x: &PerfectComplex<F>) -> Result<Barcode, PerfcxError> {
    require_dual(x)?;
    let min = minimal_model(x)?.complex;
    let Some((lo, hi)) = min.support() else { return Ok(Barcode::new()) };
    let f = min.field();
    let m = reductions(&min);
    // rk[(a, b)] = rank of M_{b−1}⋯M_a : V_a → V_b
    let mut rk: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for a in lo..=hi {
        let mut comp = Matrix::identity(f, min.rank(a));
        rk.insert((a, a), min.rank(a));
        for b in a + 1..=hi {
            comp = match m.get(&(b - 1)) {
                Some(mb) => mb.mul(&comp),
                None => Matrix::zeros(f, min.rank(b), min.rank(a)),
            };
            rk.insert((a, b), comp.rank());
        }
    }
    let r = |a: i32, b: i32| rk.get(&(a, b)).copied().unwrap_or(0);
    let mut out = Barcode::new();
    for a in lo..=hi {
        for b in a..=hi {
            let mult = r(a, b) as i64 - r(a - 1, b) as i64 - r(a, b + 1) as i64 + r(a - 1, b + 1) as i64;
            if mult < 0 {
                return Err(PerfcxError::Certificate(format!("negative interval multiplicity at [{a},{b}]")));
            }
            out.add(Bar { n: a, r: (b - a) as usize }, mult as usize);
        }
    }
    Ok(out)
}

/// An explicit splitting X ≃ ⊕ X_{n,r}: `summands` lists the bars in the order
/// of the direct sum `rebuilt`, and `map`: rebuilt → X is a homotopy
/// equivalence.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub barcode: Barcode,
    pub summands: Vec<Bar>,
    pub rebuilt: PerfectComplex<F>,
    pub map: ChainMap<F>,
}

struct Strand<E> {
    start: i32,
    vecs: Vec<Vec<E>>,
}

/// Elder-rule interval decomposition of the minimal model, with the
/// resulting chain map from the direct sum of string complexes to X.
pub fn barcode<F: Field>(x: &PerfectComplex<F>) -> Result<Decomposition<F>, PerfcxError> {
    require_dual(x)?;
    let alg = x.algebra();
    let f = x.field();
    let mm = minimal_model(x)?;
    let min = &mm.complex;
    let Some((lo, hi)) = min.support() else {
        let rebuilt = PerfectComplex::zero(alg);
        let map = ChainMap::zero(&rebuilt, x);
        return Ok(Decomposition { barcode: Barcode::new(), summands: Vec::new(), rebuilt, map });
    };
    let m = reductions(min);
    let mut done: Vec<Strand<F::Elem>> = Vec::new();
    let mut alive: Vec<Strand<F::Elem>> = Vec::new();
    for t in lo..=hi {
        let dim = min.rank(t);
        let mut accepted: Vec<Vec<F::Elem>> = Vec::new();
        let mut next_alive: Vec<Strand<F::Elem>> = Vec::new();
        // oldest first: alive is kept sorted by start
        for mut s in std::mem::take(&mut alive) {
            let w = match m.get(&(t - 1)) {
                Some(mt) if dim > 0 => mt.mul_vec(s.vecs.last().unwrap()),
                _ => vec![f.zero(); dim],
            };
            let coeffs = if w.iter().all(|c| f.is_zero(c)) {
                Some(Vec::new())
            } else if accepted.is_empty() {
                None
            } else {
                Matrix::from_columns(f, dim, &accepted).solve(&w)
            };
            match coeffs {
                Some(c) => {
                    // w = Σ c_j w_j: subtract the older strands so s dies here
                    let len = s.vecs.len();
                    for (cj, older) in c.iter().zip(&next_alive) {
                        if f.is_zero(cj) {
                            continue;
                        }
                        let off = (s.start - older.start) as usize;
                        for step in 0..len {
                            for (a, b) in s.vecs[step].iter_mut().zip(&older.vecs[off + step]) {
                                *a = f.sub(a, &f.mul(cj, b));
                            }
                        }
                    }
                    done.push(s);
                }
                None => {
                    accepted.push(w.clone());
                    s.vecs.push(w);
                    next_alive.push(s);
                }
            }
        }
        // new strands on a complement of the image
        for e in 0..dim {
            let mut v = vec![f.zero(); dim];
            v[e] = f.one();
            let mut trial = accepted.clone();
            trial.push(v.clone());
            if Matrix::from_columns(f, dim, &trial).rank() > accepted.len() {
                accepted.push(v.clone());
                next_alive.push(Strand { start: t, vecs: vec![v] });
            }
        }
        alive = next_alive;
    }
    done.extend(alive);
    done.sort_by_key(|s| (s.start, s.vecs.len()));

    let mut code = Barcode::new();
    let summands: Vec<Bar> = done.iter().map(|s| Bar { n: s.start, r: s.vecs.len() - 1 }).collect();
    for b in &summands {
        code.add(*b, 1);
    }
    let parts: Vec<PerfectComplex<F>> = summands.iter().map(|b| PerfectComplex::string(alg, b.n, b.r)).collect();
    let rebuilt = PerfectComplex::direct_sum_all(alg, &parts);
    // B^t: rebuilt^t → X_min^t, strand vectors in summand order
    let mut comps = BTreeMap::new();
    for t in lo..=hi {
        let cols: Vec<Vec<F::Elem>> = done
            .iter()
            .filter(|s| s.start <= t && t < s.start + s.vecs.len() as i32)
            .map(|s| s.vecs[(t - s.start) as usize].clone())
            .collect();
        if !cols.is_empty() {
            let bt = Matrix::from_columns(f, min.rank(t), &cols);
            comps.insert(t, AlgMatrix::from_field_matrix(alg, &bt));
        }
    }
    let to_min = ChainMap::new_unchecked(&rebuilt, min, comps)?;
    let map = mm.inclusion.compose_after(&to_min);
    Ok(Decomposition { barcode: code, summands, rebuilt, map })
}

impl<F: Field> Decomposition<F> {
    /// Checks that `map` is a chain map whose cone is acyclic over k, and that
    /// the rank formula gives the same barcode.
    pub fn certify(&self, x: &PerfectComplex<F>) -> Result<(), PerfcxError> {
        self.map.validate()?;
        let c = super::triangle::cone(&self.map)?.c;
        if !c.is_acyclic()? {
            return Err(PerfcxError::Certificate("cone of the rebuild map has cohomology".into()));
        }
        let by_ranks = barcode_by_ranks(x)?;
        if by_ranks != self.barcode {
            return Err(PerfcxError::Certificate(format!("rank formula gives {by_ranks}, strands give {}", self.barcode)));
        }
        Ok(())
    }
}

/// Homotopy equivalence over k[ε], decided by barcode equality. Other
/// algebras are reported as undecidable rather than guessed.
pub fn homotopy_equivalent<F: Field>(x: &PerfectComplex<F>, y: &PerfectComplex<F>) -> Result<bool, PerfcxError> {
    if x.algebra() != y.algebra() {
        return Err(PerfcxError::AlgebraMismatch);
    }
    if !x.algebra().is_dual_numbers() {
        return Err(PerfcxError::Undecidable(format!("homotopy equivalence over {}", x.algebra().name())));
    }
    Ok(barcode_by_ranks(x)? == barcode_by_ranks(y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffalg::CoeffAlgebra;
    use crate::exactlin::PrimeField;
    use crate::perfcx::cone;

    fn dual() -> CoeffAlgebra<PrimeField> {
        CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
    }

    #[test]
    fn string_complexes_are_single_bars() {
        let a = dual();
        for n in -2..=2 {
            for r in 0..4 {
                let x = PerfectComplex::string(&a, n, r);
                let d = barcode(&x).unwrap();
                assert_eq!(d.barcode, Barcode::single(n, r));
                d.certify(&x).unwrap();
                assert_eq!(barcode_by_ranks(&x.shift(3)).unwrap(), Barcode::single(n - 3, r));
            }
        }
    }

    #[test]
    fn sums_and_cones() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 1);
        let y = PerfectComplex::string(&a, -1, 2);
        let s = barcode_by_ranks(&x.direct_sum(&y)).unwrap();
        assert_eq!(s, Barcode::single(0, 1).merge(&Barcode::single(-1, 2)));
        let x0 = PerfectComplex::string(&a, 0, 0);
        let c = cone(&ChainMap::scalar(&x0, &a.gen())).unwrap().c;
        assert_eq!(barcode_by_ranks(&c).unwrap(), Barcode::single(-1, 1));
    }

    #[test]
    fn homotopy_equivalence_examples() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 1);
        let contractible = cone(&ChainMap::identity(&x)).unwrap().c;
        assert!(homotopy_equivalent(&x, &x.direct_sum(&contractible)).unwrap());
        let split = PerfectComplex::string(&a, 0, 0).direct_sum(&PerfectComplex::string(&a, 1, 0));
        assert!(!homotopy_equivalent(&x, &split).unwrap());
        assert!(homotopy_equivalent(&PerfectComplex::zero(&a), &contractible).unwrap());
        let p = CoeffAlgebra::poly_ring(a.field());
        assert!(matches!(
            homotopy_equivalent(&PerfectComplex::zero(&p), &PerfectComplex::zero(&p)),
            Err(PerfcxError::Undecidable(_))
        ));
    }

    #[test]
    fn tangled_complex_decomposes() {
        // two strands from degree 0 whose images coincide in degree 1
        let a = dual();
        let f = a.field();
        let e = |c: i64| vec![0, f.from_i64(c)];
        let d0 = AlgMatrix::from_fn(&a, 1, 2, |_, c| if c == 0 { e(1) } else { e(2) });
        let d1 = AlgMatrix::from_fn(&a, 1, 1, |_, _| e(3));
        let x = PerfectComplex::new(&a, BTreeMap::from([(0, 2), (1, 1), (2, 1)]), BTreeMap::from([(0, d0), (1, d1)])).unwrap();
        let d = barcode(&x).unwrap();
        assert_eq!(d.barcode, Barcode::single(0, 2).merge(&Barcode::single(0, 0)));
        d.certify(&x).unwrap();
    }
}
