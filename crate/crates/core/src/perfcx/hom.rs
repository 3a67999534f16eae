//! Hom complexes over the base field and the cohomology of their terms.

use std::collections::BTreeMap;

use rand::RngCore;

use super::complex::{normalize_graded, ChainMap, GradedMap, PerfectComplex, RegularRep};
use super::PerfcxError;
use crate::coeffalg::{end_algebra_as_table, AlgMatrix, AlgebraModule, CoeffAlgebra, FinDimAlgebra};
use crate::exactlin::{Field, Matrix, Subquotient};

#[derive(Clone, Debug)]
struct Block {
    /// source degree i of Hom(X^i, Y^{i+n})
    degree: i32,
    rows: usize,
    cols: usize,
    offset: usize,
}

/// Hom(X, Y) as a complex of base-field vector spaces:
/// Hom^n = ⊕_i Hom_A(X^i, Y^{i+n}) with (Df)^i = d_Y f^i − (−1)^n f^{i+1} d_X.
#[derive(Clone, Debug)]
pub struct HomComplex<F: Field> {
    source: PerfectComplex<F>,
    target: PerfectComplex<F>,
    reg: RegularRep<F>,
    layouts: BTreeMap<i32, Vec<Block>>,
    dims: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, Matrix<F>>,
    ranks: BTreeMap<i32, usize>,
}

impl<F: Field> HomComplex<F> {
    pub fn new(x: &PerfectComplex<F>, y: &PerfectComplex<F>) -> Result<Self, PerfcxError> {
        if x.algebra() != y.algebra() {
            return Err(PerfcxError::AlgebraMismatch);
        }
        let reg = RegularRep::new(x.algebra())?;
        let d = reg.dim();
        let mut layouts = BTreeMap::new();
        let mut dims = BTreeMap::new();
        if let (Some((xlo, xhi)), Some((ylo, yhi))) = (x.support(), y.support()) {
            for n in (ylo - xhi)..=(yhi - xlo) {
                let mut blocks = Vec::new();
                let mut offset = 0;
                for (&i, &c) in x.ranks() {
                    let r = y.rank(i + n);
                    if r > 0 {
                        blocks.push(Block { degree: i, rows: r, cols: c, offset });
                        offset += r * c * d;
                    }
                }
                if offset > 0 {
                    layouts.insert(n, blocks);
                    dims.insert(n, offset);
                }
            }
        }
        let mut hc = HomComplex {
            source: x.clone(),
            target: y.clone(),
            reg,
            layouts,
            dims,
            diffs: BTreeMap::new(),
            ranks: BTreeMap::new(),
        };
        let degrees: Vec<i32> = hc.dims.keys().copied().collect();
        for n in degrees {
            if hc.dims.contains_key(&(n + 1)) {
                let m = hc.build_diff(n);
                hc.ranks.insert(n, m.rank());
                hc.diffs.insert(n, m);
            }
        }
        Ok(hc)
    }

    pub fn source(&self) -> &PerfectComplex<F> {
        &self.source
    }
    pub fn target(&self) -> &PerfectComplex<F> {
        &self.target
    }
    fn field(&self) -> &F {
        self.source.field()
    }

    /// dim_k Hom^n
    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// Degrees with nonzero terms.
    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    /// D^n: Hom^n → Hom^{n+1}, or `None` when either side is zero.
    pub fn diff(&self, n: i32) -> Option<&Matrix<F>> {
        self.diffs.get(&n)
    }

    fn diff_rank(&self, n: i32) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    /// dim_k H^n(Hom(X, Y)) = dim_k Hom(X, Σ^n Y) in the homotopy category.
    pub fn cohomology_dim(&self, n: i32) -> usize {
        self.dim(n) - self.diff_rank(n) - self.diff_rank(n - 1)
    }

    /// Every degree with nonzero cohomology, with its dimension.
    pub fn cohomology_profile(&self) -> BTreeMap<i32, usize> {
        self.dims.keys().map(|&n| (n, self.cohomology_dim(n))).filter(|(_, d)| *d > 0).collect()
    }

    fn build_diff(&self, n: i32) -> Matrix<F> {
        let f = self.field().clone();
        let d = self.reg.dim();
        let (x, y) = (&self.source, &self.target);
        let to = &self.layouts[&(n + 1)];
        let find = |deg: i32| to.iter().find(|b| b.degree == deg);
        let mut m = Matrix::zeros(&f, self.dims[&(n + 1)], self.dims[&n]);
        let sign = if n % 2 == 0 { f.neg(&f.one()) } else { f.one() };
        let mut buf = vec![f.zero(); d];
        for b in &self.layouts[&n] {
            let i = b.degree;
            // d_Y^{i+n} E lands in block i of Hom^{n+1}
            let dy = y.diff(i + n);
            let left = find(i);
            // −(−1)^n E d_X^{i−1} lands in block i−1
            let dx = x.diff(i - 1);
            let right = find(i - 1);
            for r in 0..b.rows {
                for c in 0..b.cols {
                    for t in 0..d {
                        let col = b.offset + (r * b.cols + c) * d + t;
                        if let Some(lb) = left {
                            for r2 in 0..lb.rows {
                                let a = dy.get(r2, r);
                                if a.is_empty() {
                                    continue;
                                }
                                self.reg.times_power(a, t, &mut buf);
                                let base = lb.offset + (r2 * lb.cols + c) * d;
                                for (j, v) in buf.iter().enumerate() {
                                    if !f.is_zero(v) {
                                        let cur = m.get(base + j, col).clone();
                                        m.set(base + j, col, f.add(&cur, v));
                                    }
                                }
                            }
                        }
                        if let Some(rb) = right {
                            for c2 in 0..rb.cols {
                                let a = dx.get(c, c2);
                                if a.is_empty() {
                                    continue;
                                }
                                self.reg.times_power(a, t, &mut buf);
                                let base = rb.offset + (r * rb.cols + c2) * d;
                                for (j, v) in buf.iter().enumerate() {
                                    if !f.is_zero(v) {
                                        let cur = m.get(base + j, col).clone();
                                        m.set(base + j, col, f.mul_add(&cur, &sign, v));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// Coordinates of a graded map of degree n.
    pub fn flatten(&self, n: i32, g: &GradedMap<F>) -> Vec<F::Elem> {
        let f = self.field();
        let d = self.reg.dim();
        let mut v = vec![f.zero(); self.dim(n)];
        if let Some(blocks) = self.layouts.get(&n) {
            for b in blocks {
                if let Some(m) = g.get(&b.degree) {
                    for r in 0..b.rows {
                        for c in 0..b.cols {
                            for (t, x) in m.get(r, c).iter().enumerate() {
                                v[b.offset + (r * b.cols + c) * d + t] = x.clone();
                            }
                        }
                    }
                }
            }
        }
        v
    }

    /// The graded map of degree n with coordinates `v`.
    pub fn unflatten(&self, n: i32, v: &[F::Elem]) -> GradedMap<F> {
        let alg = self.source.algebra();
        let d = self.reg.dim();
        let mut out = BTreeMap::new();
        if let Some(blocks) = self.layouts.get(&n) {
            for b in blocks {
                let m = AlgMatrix::from_fn(alg, b.rows, b.cols, |r, c| {
                    let s = b.offset + (r * b.cols + c) * d;
                    v[s..s + d].to_vec()
                });
                out.insert(b.degree, m);
            }
        }
        out
    }

    /// Z^n
    pub fn cycles(&self, n: i32) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        match self.diffs.get(&n) {
            Some(m) => m.kernel_basis(),
            None => (0..self.dim(n))
                .map(|k| {
                    let mut v = vec![f.zero(); self.dim(n)];
                    v[k] = f.one();
                    v
                })
                .collect(),
        }
    }

    /// A spanning set of B^n.
    pub fn boundaries(&self, n: i32) -> Vec<Vec<F::Elem>> {
        match self.diffs.get(&(n - 1)) {
            Some(m) => m.column_space_basis(),
            None => Vec::new(),
        }
    }

    /// H^n with chosen cycle representatives.
    pub fn cohomology(&self, n: i32) -> Subquotient<F> {
        Subquotient::new(self.field(), self.dim(n), &self.cycles(n), &self.boundaries(n))
    }

    /// A σ of degree −1 with Dσ = φ, if φ is null-homotopic.
    pub fn null_homotopy(&self, phi: &ChainMap<F>) -> Option<GradedMap<F>> {
        let v = self.flatten(0, phi.comps());
        if v.iter().all(|c| self.field().is_zero(c)) {
            return Some(BTreeMap::new());
        }
        let m = self.diffs.get(&-1)?;
        let s = m.solve(&v)?;
        Some(self.unflatten(-1, &s))
    }

    /// A random element of Z^0 as a chain map.
    pub fn random_chain_map(&self, rng: &mut dyn RngCore) -> ChainMap<F> {
        let f = self.field();
        let z = self.cycles(0);
        let mut v = vec![f.zero(); self.dim(0)];
        for b in &z {
            let c = f.random_elem(rng);
            for (x, y) in v.iter_mut().zip(b) {
                *x = f.mul_add(x, &c, y);
            }
        }
        ChainMap::new_unchecked(&self.source, &self.target, self.unflatten(0, &v)).expect("shapes come from the layout")
    }
}

/// g ∘ f for graded maps f: X → Y of degree `nf` and g: Y → Z of degree `ng`:
/// (g∘f)^i = g^{i+nf} f^i.
pub fn compose_graded<F: Field>(alg: &CoeffAlgebra<F>, g: &GradedMap<F>, nf: i32, f: &GradedMap<F>) -> GradedMap<F> {
    let mut out = BTreeMap::new();
    for (&i, fi) in f {
        if let Some(gi) = g.get(&(i + nf)) {
            out.insert(i, gi.mul(alg, fi));
        }
    }
    out
}

/// The map H^n(Hom(C, Y)) → H^n(Hom(C, Y')) induced by post-composition with
/// φ: Y → Y', in the chosen bases of both cohomologies.
pub fn induced_post<F: Field>(
    from: &HomComplex<F>,
    h_from: &Subquotient<F>,
    to: &HomComplex<F>,
    h_to: &Subquotient<F>,
    phi: &ChainMap<F>,
    n: i32,
) -> Matrix<F> {
    let f = from.field();
    let cols: Vec<Vec<F::Elem>> = h_from
        .reps()
        .iter()
        .map(|v| {
            let g = from.unflatten(n, v);
            let comp = compose_graded(from.source().algebra(), phi.comps(), n, &g);
            h_to.coords(&to.flatten(n, &comp))
        })
        .collect();
    let mut m = Matrix::zeros(f, h_to.dim(), h_from.dim());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

/// End(X) in the homotopy category, as H^0 of the endomorphism complex, with
/// its chosen basis of chain maps.
#[derive(Clone, Debug)]
pub struct EndAlgebra<F: Field> {
    hom: HomComplex<F>,
    h0: Subquotient<F>,
    algebra: FinDimAlgebra<F>,
}

impl<F: Field> EndAlgebra<F> {
    pub fn new(x: &PerfectComplex<F>) -> Result<Self, PerfcxError> {
        let hom = HomComplex::new(x, x)?;
        let h0 = hom.cohomology(0);
        let f = x.field();
        let reps: Vec<GradedMap<F>> = h0.reps().iter().map(|v| hom.unflatten(0, v)).collect();
        let unit = if x.is_zero() {
            Vec::new()
        } else {
            h0.coords(&hom.flatten(0, ChainMap::identity(x).comps()))
        };
        let algebra = end_algebra_as_table(
            f,
            h0.dim(),
            |a, b| h0.coords(&hom.flatten(0, &compose_graded(x.algebra(), &reps[a], 0, &reps[b]))),
            unit,
        )?;
        Ok(EndAlgebra { hom, h0, algebra })
    }

    pub fn algebra(&self) -> &FinDimAlgebra<F> {
        &self.algebra
    }

    /// Basis element a as a chain map X → X.
    pub fn basis_map(&self, a: usize) -> GradedMap<F> {
        self.hom.unflatten(0, &self.h0.reps()[a])
    }

    /// H^n(Hom(C, X)) as a left End(X)-module by post-composition.
    pub fn module_on(&self, hc: &HomComplex<F>, n: i32) -> AlgebraModule<F> {
        let h = hc.cohomology(n);
        self.module_on_cohomology(hc, &h, n)
    }

    pub fn module_on_cohomology(&self, hc: &HomComplex<F>, h: &Subquotient<F>, n: i32) -> AlgebraModule<F> {
        let f = hc.field();
        let x = hc.target();
        let action = (0..self.algebra.dim())
            .map(|a| {
                let g = self.basis_map(a);
                let cols: Vec<Vec<F::Elem>> = h
                    .reps()
                    .iter()
                    .map(|v| h.coords(&hc.flatten(n, &compose_graded(x.algebra(), &g, n, &hc.unflatten(n, v)))))
                    .collect();
                if cols.is_empty() {
                    Matrix::zeros(f, 0, 0)
                } else {
                    Matrix::from_columns(f, h.dim(), &cols)
                }
            })
            .collect();
        AlgebraModule::new_unchecked(f, h.dim(), action)
    }
}

/// dim_k Hom(X, Σ^n Y) in the homotopy category.
pub fn derived_hom_dim<F: Field>(x: &PerfectComplex<F>, y: &PerfectComplex<F>, n: i32) -> Result<usize, PerfcxError> {
    Ok(HomComplex::new(x, y)?.cohomology_dim(n))
}

/// Checks that a graded family has the right shapes for degree `deg`.
pub fn graded_map<F: Field>(
    x: &PerfectComplex<F>,
    y: &PerfectComplex<F>,
    deg: i32,
    comps: GradedMap<F>,
) -> Result<GradedMap<F>, PerfcxError> {
    normalize_graded(x, y, deg, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffalg::module_length;
    use crate::exactlin::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dual() -> CoeffAlgebra<PrimeField> {
        CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
    }

    #[test]
    fn spec_examples() {
        let a = dual();
        let x0 = PerfectComplex::string(&a, 0, 0);
        let x1 = PerfectComplex::string(&a, 0, 1);
        let h = HomComplex::new(&x0, &x0).unwrap();
        assert_eq!(h.dims(), &BTreeMap::from([(0, 2)]));
        assert_eq!(h.cohomology_dim(0), 2);
        assert!(HomComplex::new(&PerfectComplex::zero(&a), &x0).unwrap().dims().is_empty());
        let h = HomComplex::new(&x1, &x0).unwrap();
        assert_eq!(h.dims(), &BTreeMap::from([(-1, 2), (0, 2)]));
        assert_eq!(h.cohomology_dim(0), 1);
        assert_eq!(derived_hom_dim(&x0, &x0, 3).unwrap(), 0);
    }

    #[test]
    fn differential_squares_to_zero() {
        let a = dual();
        let x = PerfectComplex::string(&a, -1, 2).direct_sum(&PerfectComplex::string(&a, 0, 1));
        let y = PerfectComplex::string(&a, 0, 3);
        let h = HomComplex::new(&x, &y).unwrap();
        for (&n, d) in &h.diffs {
            if let Some(next) = h.diff(n + 1) {
                assert!(next.mul(d).is_zero(), "D² ≠ 0 at {n}");
            }
        }
    }

    #[test]
    fn cycles_are_chain_maps() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 2);
        let y = PerfectComplex::string(&a, 1, 1).direct_sum(&x);
        let h = HomComplex::new(&x, &y).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            assert!(h.random_chain_map(&mut rng).validate().is_ok());
        }
    }

    #[test]
    fn shift_compatibility() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 1);
        let y = PerfectComplex::string(&a, 1, 2);
        for n in -4..4 {
            assert_eq!(derived_hom_dim(&x, &y.shift(1), n).unwrap(), derived_hom_dim(&x, &y, n + 1).unwrap());
        }
    }

    #[test]
    fn end_of_string_complex_is_local() {
        let a = dual();
        for r in 0..3 {
            let x = PerfectComplex::string(&a, 0, r);
            let e = EndAlgebra::new(&x).unwrap();
            let reg = AlgebraModule::regular(e.algebra());
            let data = crate::coeffalg::analyze(e.algebra()).unwrap();
            assert_eq!(data.top_dim(), 1);
            assert_eq!(module_length(e.algebra(), &reg).unwrap(), e.algebra().dim());
        }
        // X ⊕ X has End = M_2(End X): Hom(X, X ⊕ X) has length 1·length(End X)
        let x = PerfectComplex::string(&a, 0, 0);
        let xx = x.direct_sum(&x);
        let e = EndAlgebra::new(&xx).unwrap();
        let hc = HomComplex::new(&x, &xx).unwrap();
        let m = e.module_on(&hc, 0);
        assert_eq!(m.dim(), 4);
        assert_eq!(module_length(e.algebra(), &m).unwrap(), 2);
    }
}
