//! Bounded complexes of free modules and chain maps between them.

use std::borrow::Cow;
use std::collections::BTreeMap;

use super::PerfcxError;
use crate::coeffalg::{AlgMatrix, CoeffAlgebra};
use crate::exactlin::{Field, Matrix};

/// A bounded complex of free modules over a coefficient algebra, with
/// differentials d^i: X^i → X^{i+1} raising degree.
///
/// Only degrees of nonzero rank are stored; `diffs[i]` is present whenever
/// both X^i and X^{i+1} are nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct PerfectComplex<F: Field> {
    alg: CoeffAlgebra<F>,
    ranks: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, AlgMatrix<F>>,
}

/// A degree-wise family of matrices with source and target.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<F: Field> {
    source: PerfectComplex<F>,
    target: PerfectComplex<F>,
    comps: BTreeMap<i32, AlgMatrix<F>>,
}

/// A degree-lowering family s^i: X^i → Y^{i+deg}, used for homotopies and
/// for elements of Hom complexes.
pub type GradedMap<F> = BTreeMap<i32, AlgMatrix<F>>;

impl<F: Field> Eq for PerfectComplex<F> {}

impl<F: Field> std::hash::Hash for PerfectComplex<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ranks.hash(state);
        self.diffs.hash(state);
    }
}

impl<F: Field> PerfectComplex<F> {
    pub fn zero(alg: &CoeffAlgebra<F>) -> Self {
        PerfectComplex { alg: alg.clone(), ranks: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// Builds and validates a complex. Missing differentials are zero.
    pub fn new(
        alg: &CoeffAlgebra<F>,
        ranks: BTreeMap<i32, usize>,
        diffs: BTreeMap<i32, AlgMatrix<F>>,
    ) -> Result<Self, PerfcxError> {
        let x = Self::new_unchecked(alg, ranks, diffs)?;
        x.validate()?;
        Ok(x)
    }

    /// Checks shapes but not d² = 0.
    pub fn new_unchecked(
        alg: &CoeffAlgebra<F>,
        ranks: BTreeMap<i32, usize>,
        diffs: BTreeMap<i32, AlgMatrix<F>>,
    ) -> Result<Self, PerfcxError> {
        let ranks: BTreeMap<i32, usize> = ranks.into_iter().filter(|(_, r)| *r > 0).collect();
        let rk = |i: i32| ranks.get(&i).copied().unwrap_or(0);
        let mut stored = BTreeMap::new();
        for (i, d) in diffs {
            let (rows, cols) = (rk(i + 1), rk(i));
            if d.rows() != rows || d.cols() != cols {
                if rows * cols == 0 && d.is_zero() {
                    continue;
                }
                return Err(PerfcxError::Shape { degree: i, expected: (rows, cols), got: (d.rows(), d.cols()) });
            }
            if rows * cols > 0 {
                let d = AlgMatrix::from_fn(alg, rows, cols, |r, c| d.get(r, c).clone());
                stored.insert(i, d);
            }
        }
        for (&i, &r) in &ranks {
            let next = rk(i + 1);
            if next > 0 {
                stored.entry(i).or_insert_with(|| AlgMatrix::zeros(next, r));
            }
        }
        Ok(PerfectComplex { alg: alg.clone(), ranks, diffs: stored })
    }

    /// d^{i+1}·d^i = 0 everywhere; the error names the first nonzero entry.
    pub fn validate(&self) -> Result<(), PerfcxError> {
        for (&i, d) in &self.diffs {
            if let Some(next) = self.diffs.get(&(i + 1)) {
                let sq = next.mul(&self.alg, d);
                for r in 0..sq.rows() {
                    for c in 0..sq.cols() {
                        if !sq.get(r, c).is_empty() {
                            return Err(PerfcxError::NotAComplex { degree: i, row: r, col: c });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The string complex X_{n,r} over k[ε] (or k[x]/(f), with x in place of
    /// ε): k[ε] in degrees n..=n+r, each differential multiplication by ε.
    pub fn string(alg: &CoeffAlgebra<F>, n: i32, r: usize) -> Self {
        let ranks = (0..=r as i32).map(|j| (n + j, 1)).collect();
        let diffs = (0..r as i32).map(|j| (n + j, AlgMatrix::from_fn(alg, 1, 1, |_, _| alg.gen()))).collect();
        PerfectComplex { alg: alg.clone(), ranks, diffs }
    }

    /// A^rank placed in degree `deg`.
    pub fn stalk(alg: &CoeffAlgebra<F>, deg: i32, rank: usize) -> Self {
        Self::new_unchecked(alg, BTreeMap::from([(deg, rank)]), BTreeMap::new()).unwrap()
    }

    /// Two-term complex A^cols → A^rows in degrees deg, deg+1.
    pub fn two_term(alg: &CoeffAlgebra<F>, deg: i32, d: AlgMatrix<F>) -> Self {
        let ranks = BTreeMap::from([(deg, d.cols()), (deg + 1, d.rows())]);
        Self::new_unchecked(alg, ranks, BTreeMap::from([(deg, d)])).unwrap()
    }

    pub fn algebra(&self) -> &CoeffAlgebra<F> {
        &self.alg
    }
    pub fn field(&self) -> &F {
        self.alg.field()
    }
    pub fn ranks(&self) -> &BTreeMap<i32, usize> {
        &self.ranks
    }
    pub fn rank(&self, i: i32) -> usize {
        self.ranks.get(&i).copied().unwrap_or(0)
    }
    pub fn diffs(&self) -> &BTreeMap<i32, AlgMatrix<F>> {
        &self.diffs
    }

    /// d^i: X^i → X^{i+1}
    pub fn diff(&self, i: i32) -> Cow<'_, AlgMatrix<F>> {
        match self.diffs.get(&i) {
            Some(d) => Cow::Borrowed(d),
            None => Cow::Owned(AlgMatrix::zeros(self.rank(i + 1), self.rank(i))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Smallest and largest degree of nonzero rank.
    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.ranks.keys().next()?, *self.ranks.keys().next_back()?))
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// Σ^m X: (Σ^m X)^i = X^{i+m}, differential multiplied by (−1)^m.
    pub fn shift(&self, m: i32) -> Self {
        let ranks = self.ranks.iter().map(|(&i, &r)| (i - m, r)).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&i, d)| (i - m, if m % 2 == 0 { d.clone() } else { d.neg(&self.alg) }))
            .collect();
        PerfectComplex { alg: self.alg.clone(), ranks, diffs }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut ranks = self.ranks.clone();
        for (&i, &r) in &other.ranks {
            *ranks.entry(i).or_insert(0) += r;
        }
        let mut diffs = BTreeMap::new();
        for (&i, &r) in &ranks {
            if ranks.contains_key(&(i + 1)) {
                let a = self.diff(i);
                let b = other.diff(i);
                let d = AlgMatrix::block_diag(&[a.as_ref(), b.as_ref()]);
                debug_assert_eq!(d.cols(), r);
                diffs.insert(i, d);
            }
        }
        PerfectComplex { alg: self.alg.clone(), ranks, diffs }
    }

    pub fn direct_sum_all(alg: &CoeffAlgebra<F>, parts: &[Self]) -> Self {
        parts.iter().fold(Self::zero(alg), |acc, x| acc.direct_sum(x))
    }

    /// Differentials as base-field matrices through the regular
    /// representation (finite-dimensional algebras only).
    pub fn field_diffs(&self) -> Result<BTreeMap<i32, Matrix<F>>, PerfcxError> {
        let reg = RegularRep::new(&self.alg)?;
        Ok(self.diffs.iter().map(|(&i, d)| (i, reg.expand(d))).collect())
    }

    /// dim_k H^i(X) for every degree with nonzero terms.
    pub fn cohomology_dims(&self) -> Result<BTreeMap<i32, usize>, PerfcxError> {
        let reg = RegularRep::new(&self.alg)?;
        let ranks: BTreeMap<i32, usize> = self.diffs.iter().map(|(&i, d)| (i, reg.expand(d).rank())).collect();
        Ok(self
            .ranks
            .iter()
            .map(|(&i, &r)| {
                let out = ranks.get(&i).copied().unwrap_or(0);
                let inc = ranks.get(&(i - 1)).copied().unwrap_or(0);
                (i, r * reg.dim() - out - inc)
            })
            .collect())
    }

    /// True when every cohomology group vanishes; for bounded complexes of
    /// free modules this is contractibility.
    pub fn is_acyclic(&self) -> Result<bool, PerfcxError> {
        Ok(self.cohomology_dims()?.values().all(|&d| d == 0))
    }

    /// Replaces the differentials by a basis change: `new_basis[i]` is an
    /// invertible matrix whose columns are the new basis of X^i.
    pub fn change_basis(&self, new_basis: &BTreeMap<i32, AlgMatrix<F>>, inverses: &BTreeMap<i32, AlgMatrix<F>>) -> Self {
        let alg = &self.alg;
        let diffs = self
            .diffs
            .iter()
            .map(|(&i, d)| (i, inverses[&(i + 1)].mul(alg, &d.mul(alg, &new_basis[&i]))))
            .collect();
        PerfectComplex { alg: alg.clone(), ranks: self.ranks.clone(), diffs }
    }

    /// Overwrites one differential, keeping shapes; used by negative controls.
    pub fn with_diff_unchecked(&self, i: i32, d: AlgMatrix<F>) -> Self {
        let mut x = self.clone();
        x.diffs.insert(i, d);
        x
    }
}

/// Left multiplication by algebra elements as k-matrices on the monomial
/// basis 1, x, …, x^{d−1}.
#[derive(Clone, Debug)]
pub struct RegularRep<F: Field> {
    alg: CoeffAlgebra<F>,
    dim: usize,
    /// `table[s + t]` = coordinates of x^s·x^t
    table: Vec<Vec<F::Elem>>,
}

impl<F: Field> RegularRep<F> {
    pub fn new(alg: &CoeffAlgebra<F>) -> Result<Self, PerfcxError> {
        let dim = alg
            .dim()
            .ok_or_else(|| PerfcxError::Unsupported(format!("{} is not finite-dimensional over the base field", alg.name())))?;
        Ok(RegularRep { alg: alg.clone(), dim, table: alg.reduction_table() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of x^t·a.
    pub fn times_power(&self, a: &[F::Elem], t: usize, out: &mut [F::Elem]) {
        let f = self.alg.field();
        for o in out.iter_mut() {
            *o = f.zero();
        }
        for (s, c) in a.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (j, r) in self.table[s + t].iter().enumerate() {
                out[j] = f.mul_add(&out[j], c, r);
            }
        }
    }

    /// The (rows·d) × (cols·d) base-field matrix of an algebra matrix.
    pub fn expand(&self, m: &AlgMatrix<F>) -> Matrix<F> {
        let f = self.alg.field();
        let d = self.dim;
        let mut out = Matrix::zeros(f, m.rows() * d, m.cols() * d);
        let mut buf = vec![f.zero(); d];
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let a = m.get(r, c);
                if a.is_empty() {
                    continue;
                }
                for t in 0..d {
                    self.times_power(a, t, &mut buf);
                    for (j, v) in buf.iter().enumerate() {
                        out.set(r * d + j, c * d + t, v.clone());
                    }
                }
            }
        }
        out
    }
}

impl<F: Field> ChainMap<F> {
    /// Builds and validates a chain map. Missing components are zero.
    pub fn new(source: &PerfectComplex<F>, target: &PerfectComplex<F>, comps: GradedMap<F>) -> Result<Self, PerfcxError> {
        let m = Self::new_unchecked(source, target, comps)?;
        m.validate()?;
        Ok(m)
    }

    /// Checks shapes but not commutativity.
    pub fn new_unchecked(source: &PerfectComplex<F>, target: &PerfectComplex<F>, comps: GradedMap<F>) -> Result<Self, PerfcxError> {
        if source.alg != target.alg {
            return Err(PerfcxError::AlgebraMismatch);
        }
        let comps = normalize_graded(source, target, 0, comps)?;
        Ok(ChainMap { source: source.clone(), target: target.clone(), comps })
    }

    pub fn validate(&self) -> Result<(), PerfcxError> {
        let alg = &self.source.alg;
        let degrees: Vec<i32> = self.source.ranks.keys().copied().collect();
        for i in degrees {
            let lhs = self.target.diff(i).mul(alg, &self.comp(i));
            let rhs = self.comp(i + 1).mul(alg, &self.source.diff(i));
            let diff = lhs.sub(alg, &rhs);
            for r in 0..diff.rows() {
                for c in 0..diff.cols() {
                    if !diff.get(r, c).is_empty() {
                        return Err(PerfcxError::NotAChainMap { degree: i, row: r, col: c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero(source: &PerfectComplex<F>, target: &PerfectComplex<F>) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    pub fn identity(x: &PerfectComplex<F>) -> Self {
        Self::scalar(x, &x.alg.one())
    }

    /// c·id_X for a central element c (ε·id in particular).
    pub fn scalar(x: &PerfectComplex<F>, c: &[F::Elem]) -> Self {
        let comps = x.ranks.iter().map(|(&i, &r)| (i, AlgMatrix::scalar_identity(&x.alg, r, &c.to_vec()))).collect();
        ChainMap { source: x.clone(), target: x.clone(), comps }
    }

    pub fn source(&self) -> &PerfectComplex<F> {
        &self.source
    }
    pub fn target(&self) -> &PerfectComplex<F> {
        &self.target
    }
    pub fn comps(&self) -> &GradedMap<F> {
        &self.comps
    }

    /// f^i: X^i → Y^i
    pub fn comp(&self, i: i32) -> Cow<'_, AlgMatrix<F>> {
        match self.comps.get(&i) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(AlgMatrix::zeros(self.target.rank(i), self.source.rank(i))),
        }
    }

    /// self ∘ first
    pub fn compose_after(&self, first: &Self) -> Self {
        let alg = &self.source.alg;
        let comps = first
            .source
            .ranks
            .keys()
            .filter(|i| self.target.rank(**i) > 0)
            .map(|&i| (i, self.comp(i).mul(alg, &first.comp(i))))
            .collect();
        ChainMap { source: first.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &Self) -> Self {
        let alg = &self.source.alg;
        let comps = self
            .source
            .ranks
            .keys()
            .filter(|i| self.target.rank(**i) > 0)
            .map(|&i| (i, self.comp(i).add(alg, &other.comp(i))))
            .collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn neg(&self) -> Self {
        let alg = &self.source.alg;
        let comps = self.comps.iter().map(|(&i, m)| (i, m.neg(alg))).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// Σ^m f, with components (Σ^m f)^i = f^{i+m}.
    pub fn shift(&self, m: i32) -> Self {
        let comps = self.comps.iter().map(|(&i, c)| (i - m, c.clone())).collect();
        ChainMap { source: self.source.shift(m), target: self.target.shift(m), comps }
    }

    /// f ⊕ g: X ⊕ X' → Y ⊕ Y'
    pub fn direct_sum(&self, other: &Self) -> Self {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let comps = source
            .ranks
            .keys()
            .filter(|i| target.rank(**i) > 0)
            .map(|&i| (i, AlgMatrix::block_diag(&[self.comp(i).as_ref(), other.comp(i).as_ref()])))
            .collect();
        ChainMap { source, target, comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|m| m.is_zero())
    }
}

/// Drops components outside the supports and checks shapes of a graded map
/// of degree `deg` (components X^i → Y^{i+deg}).
pub(crate) fn normalize_graded<F: Field>(
    source: &PerfectComplex<F>,
    target: &PerfectComplex<F>,
    deg: i32,
    comps: GradedMap<F>,
) -> Result<GradedMap<F>, PerfcxError> {
    let mut out = BTreeMap::new();
    for (i, m) in comps {
        let expected = (target.rank(i + deg), source.rank(i));
        if (m.rows(), m.cols()) != expected {
            if expected.0 * expected.1 == 0 && m.is_zero() {
                continue;
            }
            return Err(PerfcxError::Shape { degree: i, expected, got: (m.rows(), m.cols()) });
        }
        if expected.0 * expected.1 > 0 {
            out.insert(i, m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;

    fn dual() -> CoeffAlgebra<PrimeField> {
        CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
    }

    #[test]
    fn validation_examples() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 1);
        assert!(x.validate().is_ok());
        assert!(PerfectComplex::zero(&a).validate().is_ok());
        // X_{0,2} with the degree-0 differential forced to 1: d^1 d^0 = ε ≠ 0
        let y = PerfectComplex::string(&a, 0, 2).with_diff_unchecked(0, AlgMatrix::identity(&a, 1));
        assert_eq!(y.validate(), Err(PerfcxError::NotAComplex { degree: 0, row: 0, col: 0 }));
    }

    #[test]
    fn shifts_compose() {
        let a = dual();
        let x = PerfectComplex::string(&a, 1, 2);
        assert_eq!(x.shift(0), x);
        assert_eq!(x.shift(2).shift(-3), x.shift(-1));
        assert_eq!(x.shift(2).ranks(), PerfectComplex::string(&a, -1, 2).ranks());
        assert!(PerfectComplex::zero(&a).shift(5).is_zero());
    }

    #[test]
    fn string_complexes_have_cohomology_at_ends() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 2);
        let h = x.cohomology_dims().unwrap();
        assert_eq!(h.values().copied().collect::<Vec<_>>(), vec![1, 0, 1]);
        let cone_like = PerfectComplex::two_term(&a, 0, AlgMatrix::identity(&a, 1));
        assert!(cone_like.is_acyclic().unwrap());
    }

    #[test]
    fn chain_map_checks() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 1);
        let e = ChainMap::scalar(&x, &a.gen());
        assert!(e.validate().is_ok());
        let id = ChainMap::identity(&x);
        assert_eq!(id.compose_after(&e), e);
        // X_{0,1} → X_{0,0} in degree 0 commutes, the inclusion back does not
        let y = PerfectComplex::string(&a, 0, 0);
        let one = BTreeMap::from([(0, AlgMatrix::identity(&a, 1))]);
        assert!(ChainMap::new(&x, &y, one.clone()).is_ok());
        let bad = ChainMap::new(&y, &x, one);
        assert_eq!(bad, Err(PerfcxError::NotAChainMap { degree: 0, row: 0, col: 0 }));
    }
}
