//! Coefficient algebras k[ε], k[x] and k[x]/(f), and matrices over them.

use std::hash::{Hash, Hasher};

use rand::RngCore;
use serde_json::Value;

use super::AlgebraError;
use crate::exactlin::{poly, ExtensionField, Field, Matrix, Poly, PolyMatrix, PrimeField};

/// Which coefficient ring a complex lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind<F: Field> {
    DualNumbers,
    PolyRing,
    /// k[x]/(f) with f monic of degree at least 1.
    PolyQuotient(Poly<F>),
}

/// A commutative coefficient algebra over a field. Elements are polynomials in
/// x, reduced modulo the defining relation when there is one (ε is x).
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffAlgebra<F: Field> {
    field: F,
    kind: AlgebraKind<F>,
    modulus: Option<Poly<F>>,
}

impl<F: Field> CoeffAlgebra<F> {
    pub fn dual_numbers(field: &F) -> Self {
        let m = poly::from_i64s(field, &[0, 0, 1]);
        CoeffAlgebra { field: field.clone(), kind: AlgebraKind::DualNumbers, modulus: Some(m) }
    }

    pub fn poly_ring(field: &F) -> Self {
        CoeffAlgebra { field: field.clone(), kind: AlgebraKind::PolyRing, modulus: None }
    }

    pub fn poly_quotient(field: &F, f: Poly<F>) -> Result<Self, AlgebraError> {
        let f = poly::trim(field, f);
        if poly::degree::<F>(&f).unwrap_or(0) == 0 || !field.is_one(f.last().unwrap()) {
            return Err(AlgebraError::BadModulus);
        }
        Ok(CoeffAlgebra { field: field.clone(), kind: AlgebraKind::PolyQuotient(f.clone()), modulus: Some(f) })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn kind(&self) -> &AlgebraKind<F> {
        &self.kind
    }
    pub fn modulus(&self) -> Option<&Poly<F>> {
        self.modulus.as_ref()
    }
    pub fn is_dual_numbers(&self) -> bool {
        matches!(self.kind, AlgebraKind::DualNumbers)
    }

    /// Dimension over the base field, `None` for k[x].
    pub fn dim(&self) -> Option<usize> {
        self.modulus.as_ref().map(|m| m.len() - 1)
    }

    pub fn reduce(&self, a: Poly<F>) -> Poly<F> {
        let a = poly::trim(&self.field, a);
        match &self.modulus {
            Some(m) if a.len() >= m.len() => poly::rem(&self.field, &a, m),
            _ => a,
        }
    }

    pub fn zero(&self) -> Poly<F> {
        Vec::new()
    }
    pub fn one(&self) -> Poly<F> {
        poly::constant(&self.field, self.field.one())
    }
    /// The generator x (ε for dual numbers).
    pub fn gen(&self) -> Poly<F> {
        self.reduce(poly::x(&self.field))
    }
    pub fn scalar(&self, c: F::Elem) -> Poly<F> {
        poly::constant(&self.field, c)
    }
    pub fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        poly::add(&self.field, a, b)
    }
    pub fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        poly::sub(&self.field, a, b)
    }
    pub fn neg(&self, a: &Poly<F>) -> Poly<F> {
        poly::neg(&self.field, a)
    }
    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.reduce(poly::mul(&self.field, a, b))
    }

    /// For a local quotient k[x]/(g^e), the irreducible g; `None` if the
    /// algebra is not local or locality cannot be decided over this field.
    pub fn maximal_ideal_generator(&self) -> Option<Poly<F>> {
        let f = &self.field;
        let m = self.modulus.as_ref()?;
        if self.is_dual_numbers() {
            return Some(poly::x(f));
        }
        let g = if f.order().is_some() {
            match poly::trial_factor(f, m) {
                Some(g) => g,
                None => poly::monic(f, m),
            }
        } else {
            // char 0: the squarefree part must be linear
            let d = poly::derivative(f, m);
            let sq = poly::monic(f, &poly::exact_div(f, m, &poly::gcd(f, m, &d)));
            if poly::degree::<F>(&sq) != Some(1) {
                return None;
            }
            sq
        };
        let mut rest = m.clone();
        while poly::degree::<F>(&rest).unwrap_or(0) > 0 {
            let (q, r) = poly::divrem(f, &rest, &g);
            if !r.is_empty() {
                return None;
            }
            rest = q;
        }
        Some(g)
    }

    /// Whether `a` is a unit. In k[x] the units are the nonzero constants.
    pub fn is_unit(&self, a: &Poly<F>) -> bool {
        match &self.modulus {
            None => poly::degree::<F>(a) == Some(0),
            Some(m) => {
                let g = poly::gcd(&self.field, a, m);
                poly::degree::<F>(&g) == Some(0)
            }
        }
    }

    pub fn inverse(&self, a: &Poly<F>) -> Option<Poly<F>> {
        let f = &self.field;
        match &self.modulus {
            None => {
                if poly::degree::<F>(a) == Some(0) {
                    Some(poly::constant(f, f.inv(&a[0]).unwrap()))
                } else {
                    None
                }
            }
            Some(m) => {
                let (g, s, _) = poly::xgcd(f, a, m);
                if poly::degree::<F>(&g) == Some(0) {
                    Some(self.reduce(s))
                } else {
                    None
                }
            }
        }
    }

    /// x^k reduced, as a coefficient vector of length `dim` (finite algebras).
    pub fn power_coords(&self, k: usize) -> Vec<F::Elem> {
        let d = self.dim().expect("finite-dimensional algebra");
        let mut mono = vec![self.field.zero(); k + 1];
        mono[k] = self.field.one();
        self.coords(&self.reduce(mono), d)
    }

    /// Coefficient vector of a reduced element, padded to length `d`.
    pub fn coords(&self, a: &Poly<F>, d: usize) -> Vec<F::Elem> {
        let mut v = a.clone();
        v.resize(d.max(v.len()), self.field.zero());
        v
    }

    pub fn random_elem(&self, max_deg: usize, rng: &mut dyn RngCore) -> Poly<F> {
        let d = self.dim().map_or(max_deg + 1, |d| d.min(max_deg + 1));
        let c = (0..d).map(|_| self.field.random_elem(rng)).collect();
        self.reduce(c)
    }

    /// JSON form of an entry: [a, b] for dual numbers, a coefficient list otherwise.
    pub fn elem_to_json(&self, a: &Poly<F>) -> Value {
        let f = &self.field;
        if self.is_dual_numbers() {
            let c = self.coords(a, 2);
            return Value::Array(vec![f.elem_to_json(&c[0]), f.elem_to_json(&c[1])]);
        }
        Value::Array(a.iter().map(|c| f.elem_to_json(c)).collect())
    }

    pub fn elem_from_json(&self, v: &Value) -> Result<Poly<F>, AlgebraError> {
        let arr = v
            .as_array()
            .ok_or_else(|| AlgebraError::Parse(format!("expected an entry list, got {v}")))?;
        if self.is_dual_numbers() && arr.len() != 2 {
            return Err(AlgebraError::Parse(format!("dual-number entry must be [a, b], got {v}")));
        }
        let mut c = Vec::with_capacity(arr.len());
        for x in arr {
            c.push(self.field.elem_from_json(x).map_err(|e| AlgebraError::Parse(e.to_string()))?);
        }
        Ok(self.reduce(c))
    }

    pub fn name(&self) -> String {
        match &self.kind {
            AlgebraKind::DualNumbers => format!("{}[e]", self.field.name()),
            AlgebraKind::PolyRing => format!("{}[x]", self.field.name()),
            AlgebraKind::PolyQuotient(m) => format!("{}[x]/({})", self.field.name(), poly::display(&self.field, m, "x")),
        }
    }

    /// Multiplication table of the monomial basis 1, x, …, x^{d-1}:
    /// `table[s + t]` holds the coordinates of x^s·x^t.
    pub fn reduction_table(&self) -> Vec<Vec<F::Elem>> {
        let d = self.dim().expect("finite-dimensional algebra");
        (0..(2 * d).saturating_sub(1)).map(|k| self.power_coords(k)).collect()
    }
}

/// A matrix with entries in a coefficient algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<Poly<F>>,
}

impl<F: Field> Eq for AlgMatrix<F> {}

impl<F: Field> Hash for AlgMatrix<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl<F: Field> AlgMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        AlgMatrix { rows, cols, data: vec![Vec::new(); rows * cols] }
    }

    pub fn identity(alg: &CoeffAlgebra<F>, n: usize) -> Self {
        Self::scalar_identity(alg, n, &alg.one())
    }

    /// `c · I_n`
    pub fn scalar_identity(_alg: &CoeffAlgebra<F>, n: usize, c: &Poly<F>) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_fn(alg: &CoeffAlgebra<F>, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly<F>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(alg.reduce(f(i, j)));
            }
        }
        AlgMatrix { rows, cols, data }
    }

    /// Entries given as coefficient lists (low degree first).
    pub fn from_i64(alg: &CoeffAlgebra<F>, rows: usize, cols: usize, entries: &[&[i64]]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Self::from_fn(alg, rows, cols, |i, j| poly::from_i64s(alg.field(), entries[i * cols + j]))
    }

    /// A field matrix viewed as a matrix of constants.
    pub fn from_field_matrix(alg: &CoeffAlgebra<F>, m: &Matrix<F>) -> Self {
        Self::from_fn(alg, m.rows(), m.cols(), |i, j| alg.scalar(m.get(i, j).clone()))
    }

    /// Σ_j x^j · coeffs[j]
    pub fn from_coefficients(alg: &CoeffAlgebra<F>, rows: usize, cols: usize, coeffs: &[Matrix<F>]) -> Self {
        Self::from_fn(alg, rows, cols, |i, j| coeffs.iter().map(|m| m.get(i, j).clone()).collect())
    }

    pub fn from_poly_matrix(alg: &CoeffAlgebra<F>, m: &PolyMatrix<F>) -> Self {
        Self::from_fn(alg, m.rows(), m.cols(), |i, j| m.get(i, j).clone())
    }

    pub fn to_poly_matrix(&self, alg: &CoeffAlgebra<F>) -> PolyMatrix<F> {
        PolyMatrix::from_fn(alg.field(), self.rows, self.cols, |i, j| self.get(i, j).clone())
    }

    pub fn random(alg: &CoeffAlgebra<F>, rows: usize, cols: usize, max_deg: usize, rng: &mut dyn RngCore) -> Self {
        Self::from_fn(alg, rows, cols, |_, _| alg.random_elem(max_deg, rng))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, alg: &CoeffAlgebra<F>, i: usize, j: usize, v: Poly<F>) {
        self.data[i * self.cols + j] = alg.reduce(v);
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_empty())
    }

    /// Largest polynomial degree among the entries.
    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(poly::degree::<F>).max()
    }

    /// The field matrix of x^j-coefficients.
    pub fn coefficient(&self, field: &F, j: usize) -> Matrix<F> {
        Matrix::from_fn(field, self.rows, self.cols, |r, c| self.get(r, c).get(j).cloned().unwrap_or_else(|| field.zero()))
    }

    /// Constant terms, i.e. the reduction modulo x (modulo ε for dual numbers).
    pub fn constant_part(&self, field: &F) -> Matrix<F> {
        self.coefficient(field, 0)
    }

    pub fn mul(&self, alg: &CoeffAlgebra<F>, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = alg.field();
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_empty() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_empty() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = poly::add(f, &out.data[idx], &poly::mul(f, a, b));
                }
            }
        }
        for e in out.data.iter_mut() {
            *e = alg.reduce(std::mem::take(e));
        }
        out
    }

    pub fn add(&self, alg: &CoeffAlgebra<F>, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| alg.add(a, b)).collect();
        AlgMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, alg: &CoeffAlgebra<F>, other: &Self) -> Self {
        self.add(alg, &other.neg(alg))
    }

    pub fn neg(&self, alg: &CoeffAlgebra<F>) -> Self {
        let data = self.data.iter().map(|a| alg.neg(a)).collect();
        AlgMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, alg: &CoeffAlgebra<F>, c: &Poly<F>) -> Self {
        let data = self.data.iter().map(|a| alg.mul(c, a)).collect();
        AlgMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
    }

    pub fn block_diag(parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.data[i * self.cols + j] = self.get(r, j).clone();
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[i * idx.len() + j] = self.get(i, c).clone();
            }
        }
        out
    }

    /// row_i ← row_i + c·row_j
    pub fn add_row_multiple(&mut self, alg: &CoeffAlgebra<F>, i: usize, j: usize, c: &Poly<F>) {
        for k in 0..self.cols {
            let t = alg.mul(c, self.get(j, k));
            let idx = i * self.cols + k;
            self.data[idx] = alg.add(&self.data[idx], &t);
        }
    }

    /// col_i ← col_i + c·col_j
    pub fn add_col_multiple(&mut self, alg: &CoeffAlgebra<F>, i: usize, j: usize, c: &Poly<F>) {
        for k in 0..self.rows {
            let t = alg.mul(c, self.get(k, j));
            let idx = k * self.cols + i;
            self.data[idx] = alg.add(&self.data[idx], &t);
        }
    }

    pub fn scale_row(&mut self, alg: &CoeffAlgebra<F>, i: usize, c: &Poly<F>) {
        for k in 0..self.cols {
            let idx = i * self.cols + k;
            self.data[idx] = alg.mul(c, &self.data[idx]);
        }
    }

    pub fn scale_col(&mut self, alg: &CoeffAlgebra<F>, j: usize, c: &Poly<F>) {
        for k in 0..self.rows {
            let idx = k * self.cols + j;
            self.data[idx] = alg.mul(c, &self.data[idx]);
        }
    }

    pub fn remove_row(&mut self, i: usize) {
        let start = i * self.cols;
        self.data.drain(start..start + self.cols);
        self.rows -= 1;
    }

    pub fn remove_col(&mut self, j: usize) {
        let cols = self.cols;
        let mut k = 0;
        self.data.retain(|_| {
            let keep = k % cols != j;
            k += 1;
            keep
        });
        self.cols -= 1;
    }

    /// Inverse over a local finite-dimensional algebra or a field-like
    /// situation, by Gauss–Jordan with unit pivots.
    pub fn inverse(&self, alg: &CoeffAlgebra<F>) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(alg, n);
        for c in 0..n {
            let p = (c..n).find(|&r| alg.is_unit(a.get(r, c)))?;
            if p != c {
                for k in 0..n {
                    a.data.swap(p * n + k, c * n + k);
                    inv.data.swap(p * n + k, c * n + k);
                }
            }
            let u = alg.inverse(a.get(c, c)).unwrap();
            a.scale_row(alg, c, &u);
            inv.scale_row(alg, c, &u);
            for r in 0..n {
                if r == c || a.get(r, c).is_empty() {
                    continue;
                }
                let factor = alg.neg(a.get(r, c));
                a.add_row_multiple(alg, r, c, &factor);
                inv.add_row_multiple(alg, r, c, &factor);
            }
        }
        Some(inv)
    }
}

/// A point of Spec of the coefficient ring: the zero ideal or a principal
/// prime (f) of k[x], or the maximal ideal (ε) of k[ε].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimeDatum<F: Field> {
    Zero,
    Principal(Poly<F>),
    DualMaximal,
}

impl<F: Field> PrimeDatum<F> {
    /// The prime (f) for a monic irreducible f; reducible input is rejected
    /// with a witness factor. Over infinite fields only linear f are accepted.
    pub fn principal(field: &F, f: Poly<F>) -> Result<Self, AlgebraError> {
        let f = poly::monic(field, &poly::trim(field, f));
        match poly::degree::<F>(&f) {
            None | Some(0) => Err(AlgebraError::NotPrime("constant polynomial".into())),
            Some(1) => Ok(PrimeDatum::Principal(f)),
            Some(_) => {
                if field.order().is_none() {
                    return Err(AlgebraError::Unsupported("nonlinear primes over an infinite field".into()));
                }
                match poly::trial_factor(field, &f) {
                    Some(w) => Err(AlgebraError::Reducible { witness: poly::display(field, &w, "x") }),
                    None => Ok(PrimeDatum::Principal(f)),
                }
            }
        }
    }

    pub fn label(&self, field: &F) -> String {
        match self {
            PrimeDatum::Zero => "(0)".to_string(),
            PrimeDatum::Principal(f) => format!("({})", poly::display(field, f, "x")),
            PrimeDatum::DualMaximal => "(e)".to_string(),
        }
    }
}

/// The residue field k(p) of a prime of the coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub enum ResidueField<F: Field> {
    /// k itself, reached by evaluating x at `point`.
    Base { field: F, point: F::Elem },
    /// F_p[t]/(f) for a nonlinear irreducible f.
    Extension(ExtensionField),
    /// k(x); ranks are computed by fraction-free elimination downstream.
    FractionField,
}

/// Residue field of `p` in `alg`.
pub fn residue_field<F: Field>(alg: &CoeffAlgebra<F>, p: &PrimeDatum<F>) -> Result<ResidueField<F>, AlgebraError> {
    let f = alg.field();
    match (alg.kind(), p) {
        (AlgebraKind::DualNumbers, PrimeDatum::DualMaximal) => Ok(ResidueField::Base { field: f.clone(), point: f.zero() }),
        (AlgebraKind::PolyRing, PrimeDatum::Zero) => Ok(ResidueField::FractionField),
        (AlgebraKind::PolyRing, PrimeDatum::Principal(g)) => {
            let g = match PrimeDatum::principal(f, g.clone())? {
                PrimeDatum::Principal(g) => g,
                _ => unreachable!(),
            };
            if g.len() == 2 {
                return Ok(ResidueField::Base { field: f.clone(), point: f.neg(&g[0]) });
            }
            let p = f.characteristic();
            if f.prime_degree() != 1 || p == 0 {
                return Err(AlgebraError::Unsupported("extension residue fields need a prime base field".into()));
            }
            let coeffs: Vec<u64> = g.iter().map(|c| f.to_prime_coords(c).unwrap()[0]).collect();
            let base = PrimeField::new(p).map_err(|e| AlgebraError::Unsupported(e.to_string()))?;
            let ext = ExtensionField::new(base, &coeffs).map_err(|e| AlgebraError::Unsupported(e.to_string()))?;
            Ok(ResidueField::Extension(ext))
        }
        _ => Err(AlgebraError::NotPrime(format!("{} is not a prime of {}", p.label(f), alg.name()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn dual_number_arithmetic() {
        let a = CoeffAlgebra::dual_numbers(&f5());
        let e = a.gen();
        assert!(a.mul(&e, &e).is_empty());
        assert!(!a.is_unit(&e));
        let u = a.add(&a.one(), &e);
        let ui = a.inverse(&u).unwrap();
        assert_eq!(a.mul(&u, &ui), a.one());
        assert_eq!(a.maximal_ideal_generator(), Some(vec![0, 1]));
    }

    #[test]
    fn locality_of_quotients() {
        let f = f5();
        let local = CoeffAlgebra::poly_quotient(&f, poly::mul(&f, &vec![2, 0, 1], &vec![2, 0, 1])).unwrap();
        assert_eq!(local.maximal_ideal_generator(), Some(vec![2, 0, 1]));
        let split = CoeffAlgebra::poly_quotient(&f, vec![0, 4, 0, 1]).unwrap();
        assert_eq!(split.maximal_ideal_generator(), None);
        let q = Rationals;
        let qa = CoeffAlgebra::poly_quotient(&q, poly::from_i64s(&q, &[1, 2, 1])).unwrap();
        assert_eq!(qa.maximal_ideal_generator(), Some(poly::from_i64s(&q, &[1, 1])));
    }

    #[test]
    fn residue_fields() {
        let f = f5();
        let d = CoeffAlgebra::dual_numbers(&f);
        assert_eq!(
            residue_field(&d, &PrimeDatum::DualMaximal).unwrap(),
            ResidueField::Base { field: f, point: 0 }
        );
        let r = CoeffAlgebra::poly_ring(&f);
        match residue_field(&r, &PrimeDatum::Principal(vec![2, 0, 1])).unwrap() {
            ResidueField::Extension(e) => assert_eq!(e.order(), Some(25)),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(residue_field(&r, &PrimeDatum::Zero).unwrap(), ResidueField::FractionField);
        assert!(matches!(
            residue_field(&r, &PrimeDatum::Principal(vec![1, 0, 1])),
            Err(AlgebraError::Reducible { .. })
        ));
    }

    #[test]
    fn matrix_inverse_over_dual_numbers() {
        let a = CoeffAlgebra::dual_numbers(&f5());
        let m = AlgMatrix::from_i64(&a, 2, 2, &[&[0, 1], &[1], &[1, 2], &[3, 1]]);
        let mi = m.inverse(&a).unwrap();
        assert_eq!(m.mul(&a, &mi), AlgMatrix::identity(&a, 2));
    }
}
