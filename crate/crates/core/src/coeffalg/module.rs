//! Modules over finite-dimensional algebras and their composition length.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::findim::FinDimAlgebra;
use super::radical::radical;
use super::AlgebraError;
use crate::exactlin::{poly, Field, Matrix, Poly, Rationals};

/// A left module: `action[a]` is the matrix of basis element e_a.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraModule<F: Field> {
    field: F,
    dim: usize,
    action: Vec<Matrix<F>>,
}

impl<F: Field> AlgebraModule<F> {
    /// Checks that the action is unital and multiplicative.
    pub fn new(e: &FinDimAlgebra<F>, dim: usize, action: Vec<Matrix<F>>) -> Result<Self, AlgebraError> {
        let m = Self::new_unchecked(e.field(), dim, action);
        if m.action.len() != e.dim() || m.action.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(AlgebraError::NotAModule("action has the wrong shape".into()));
        }
        if m.act(e.unit()) != Matrix::identity(e.field(), dim) {
            return Err(AlgebraError::NotAModule("unit does not act as the identity".into()));
        }
        for a in 0..e.dim() {
            for b in 0..e.dim() {
                let lhs = m.action[a].mul(&m.action[b]);
                if lhs != m.act(e.product_of_basis(a, b)) {
                    return Err(AlgebraError::NotAModule(format!("action of e_{a}·e_{b} is not multiplicative")));
                }
            }
        }
        Ok(m)
    }

    pub fn new_unchecked(field: &F, dim: usize, action: Vec<Matrix<F>>) -> Self {
        AlgebraModule { field: field.clone(), dim, action }
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular(e: &FinDimAlgebra<F>) -> Self {
        let action = (0..e.dim()).map(|a| e.left_mult_matrix(&e.basis(a))).collect();
        Self::new_unchecked(e.field(), e.dim(), action)
    }

    /// A direct sum of copies of the base field, for the base field viewed as a 1-dimensional algebra.
    pub fn free_over_base(field: &F, dim: usize) -> Self {
        Self::new_unchecked(field, dim, vec![Matrix::identity(field, dim)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// Matrix of an arbitrary algebra element.
    pub fn act(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (a, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                out = out.add(&self.action[a].scale(c));
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| Matrix::block_diag(&self.field, &[a, b]))
            .collect();
        Self::new_unchecked(&self.field, self.dim + other.dim, action)
    }
}

/// What module_length needs to know about E: its radical, lifted primitive
/// central idempotents of E/rad E and the dimension of the simple module of
/// each block.
#[derive(Clone, Debug)]
pub struct SemisimpleData<F: Field> {
    radical: Vec<Vec<F::Elem>>,
    idempotents: Vec<Vec<F::Elem>>,
    simple_dims: Vec<usize>,
    top_dim: usize,
}

impl<F: Field> SemisimpleData<F> {
    pub fn radical(&self) -> &[Vec<F::Elem>] {
        &self.radical
    }
    /// dim_k(E / rad E)
    pub fn top_dim(&self) -> usize {
        self.top_dim
    }
    /// k-dimensions of the simple E-modules, one per block.
    pub fn simple_dims(&self) -> &[usize] {
        &self.simple_dims
    }
    /// Idempotents of E lifting the primitive central idempotents of E/rad E.
    pub fn idempotents(&self) -> &[Vec<F::Elem>] {
        &self.idempotents
    }

    /// Composition length of `m`, peeling radical layers. When E/rad E is the
    /// base field the length is the dimension.
    pub fn length(&self, m: &AlgebraModule<F>) -> Result<usize, AlgebraError> {
        if self.top_dim == 1 {
            return Ok(m.dim());
        }
        self.length_by_layers(m)
    }

    /// Composition length without the fast path.
    pub fn length_by_layers(&self, m: &AlgebraModule<F>) -> Result<usize, AlgebraError> {
        let f = &m.field;
        let n = m.dim();
        let rad_ops: Vec<Matrix<F>> = self.radical.iter().map(|r| m.act(r)).collect();
        let idem_ops: Vec<Matrix<F>> = self.idempotents.iter().map(|e| m.act(e)).collect();
        let mut layer: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut v = vec![f.zero(); n];
                v[i] = f.one();
                v
            })
            .collect();
        let mut total = 0;
        while !layer.is_empty() {
            let mut next: Vec<Vec<F::Elem>> = Vec::new();
            for r in &rad_ops {
                for v in &layer {
                    next.push(r.mul_vec(v));
                }
            }
            let next = span_basis(f, n, next);
            for (e, s) in idem_ops.iter().zip(&self.simple_dims) {
                let mut gens: Vec<Vec<F::Elem>> = layer.iter().map(|v| e.mul_vec(v)).collect();
                gens.extend(next.iter().cloned());
                let c = span_basis(f, n, gens).len() - next.len();
                if c % s != 0 {
                    return Err(AlgebraError::Inconsistent(format!(
                        "layer contribution {c} is not a multiple of the simple dimension {s}"
                    )));
                }
                total += c / s;
            }
            if next.len() == layer.len() {
                return Err(AlgebraError::Inconsistent("radical does not act nilpotently".into()));
            }
            layer = next;
        }
        Ok(total)
    }
}

fn span_basis<F: Field>(f: &F, n: usize, vecs: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    if vecs.is_empty() {
        return vecs;
    }
    Matrix::from_columns(f, n, &vecs).column_space_basis()
}

/// Radical and block data of E.
pub fn analyze<F: Field>(e: &FinDimAlgebra<F>) -> Result<SemisimpleData<F>, AlgebraError> {
    let f = e.field();
    let rad = radical(e);
    let (s, sq) = e.quotient(&rad);
    let top_dim = s.dim();
    if top_dim == 0 {
        return Ok(SemisimpleData { radical: rad, idempotents: vec![], simple_dims: vec![], top_dim });
    }
    if top_dim == 1 {
        return Ok(SemisimpleData { radical: rad, idempotents: vec![e.unit().to_vec()], simple_dims: vec![1], top_dim });
    }
    let centre = s.center();
    let split_basis = match f.order() {
        Some(q) => {
            // Berlekamp subalgebra {z : z^q = z} of the centre
            let zmat = Matrix::from_columns(f, s.dim(), &centre);
            let frob_minus_id: Vec<Vec<F::Elem>> = centre
                .iter()
                .enumerate()
                .map(|(idx, z)| {
                    let zq = s.pow(z, q);
                    let mut c = zmat.solve(&zq).expect("Frobenius preserves the centre");
                    c[idx] = f.sub(&c[idx], &f.one());
                    c
                })
                .collect();
            let m = Matrix::from_columns(f, centre.len(), &frob_minus_id);
            m.kernel_basis().iter().map(|c| zmat.mul_vec(c)).collect::<Vec<_>>()
        }
        None => centre.clone(),
    };
    let roots = RootFinder::new(f)?;
    let mut idem: Vec<Vec<F::Elem>> = vec![s.unit().to_vec()];
    for b in &split_basis {
        let mut refined = Vec::new();
        for e0 in &idem {
            let v = s.mul(e0, b);
            refined.extend(split_by_eigenvalues(&s, e0, &v, &roots)?);
        }
        idem = refined;
    }
    if f.order().is_some() && idem.len() != split_basis.len() {
        return Err(AlgebraError::Inconsistent("central idempotent count differs from the Berlekamp dimension".into()));
    }
    let mut simple_dims = Vec::new();
    for e0 in &idem {
        let zdim = s.span_dim(&centre.iter().map(|z| s.mul(e0, z)).collect::<Vec<_>>());
        if f.order().is_none() && zdim != 1 {
            return Err(AlgebraError::NonSplit);
        }
        let bdim = s.left_mult_matrix(e0).rank();
        if bdim % zdim != 0 {
            return Err(AlgebraError::Inconsistent("block dimension is not a multiple of its centre".into()));
        }
        let nsq = bdim / zdim;
        let n = (nsq as f64).sqrt().round() as usize;
        if n * n != nsq {
            return Err(AlgebraError::Inconsistent(format!("block of dimension {bdim} over a centre of dimension {zdim}")));
        }
        simple_dims.push(n * zdim);
    }
    // lift to idempotents of E
    let reps = sq.reps();
    let lifted = idem
        .iter()
        .map(|c| {
            let mut x = vec![f.zero(); e.dim()];
            for (ci, r) in c.iter().zip(reps) {
                x = e.add(&x, &e.scale(ci, r));
            }
            lift_idempotent(e, x)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SemisimpleData { radical: rad, idempotents: lifted, simple_dims, top_dim })
}

/// Iterates x ↦ 3x² − 2x³ until x is idempotent.
fn lift_idempotent<F: Field>(e: &FinDimAlgebra<F>, mut x: Vec<F::Elem>) -> Result<Vec<F::Elem>, AlgebraError> {
    let f = e.field();
    let three = f.from_i64(3);
    let two = f.from_i64(2);
    for _ in 0..64 {
        let x2 = e.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = e.mul(&x2, &x);
        x = e.sub(&e.scale(&three, &x2), &e.scale(&two, &x3));
    }
    Err(AlgebraError::Inconsistent("idempotent lifting did not converge".into()))
}

/// Splits the idempotent `e0` of a commutative-in-context algebra along the
/// eigenvalues of `v ∈ e0·S` (v central).
fn split_by_eigenvalues<F: Field>(
    s: &FinDimAlgebra<F>,
    e0: &[F::Elem],
    v: &[F::Elem],
    roots: &RootFinder<F>,
) -> Result<Vec<Vec<F::Elem>>, AlgebraError> {
    let f = s.field();
    // minimal polynomial of v in e0·S, whose unit is e0
    let mut powers: Vec<Vec<F::Elem>> = vec![e0.to_vec()];
    let mu: Poly<F> = loop {
        let last = powers.last().unwrap().clone();
        let next = s.mul(&last, v);
        let m = Matrix::from_columns(f, s.dim(), &powers);
        if let Some(c) = m.solve(&next) {
            // next = Σ c_i v^i  ⇒  μ(t) = t^k − Σ c_i t^i
            let mut mu: Poly<F> = c.iter().map(|x| f.neg(x)).collect();
            mu.push(f.one());
            break mu;
        }
        powers.push(next);
    };
    let rs = roots.roots(&mu)?;
    if rs.len() != mu.len() - 1 {
        return Err(AlgebraError::NonSplit);
    }
    if rs.len() == 1 {
        return Ok(vec![e0.to_vec()]);
    }
    let mut out = Vec::new();
    for (i, lam) in rs.iter().enumerate() {
        let mut acc = e0.to_vec();
        for (j, nu) in rs.iter().enumerate() {
            if i == j {
                continue;
            }
            let shifted = s.sub(v, &s.scale(nu, e0));
            let inv = f.inv(&f.sub(lam, nu)).unwrap();
            acc = s.scale(&inv, &s.mul(&acc, &shifted));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Roots in the base field of a polynomial: enumeration over small finite
/// fields, rational-root search over Q.
pub(crate) struct RootFinder<F: Field> {
    field: F,
    elems: Option<Vec<F::Elem>>,
}

impl<F: Field> RootFinder<F> {
    pub(crate) fn new(field: &F) -> Result<Self, AlgebraError> {
        match field.order() {
            Some(_) => match field.enumerate(1 << 22) {
                Some(e) => Ok(RootFinder { field: field.clone(), elems: Some(e) }),
                None => Err(AlgebraError::Unsupported("root finding over large finite fields".into())),
            },
            None => Ok(RootFinder { field: field.clone(), elems: None }),
        }
    }

    /// Distinct roots of `a`.
    pub(crate) fn roots(&self, a: &Poly<F>) -> Result<Vec<F::Elem>, AlgebraError> {
        let f = &self.field;
        match &self.elems {
            Some(all) => Ok(all.iter().filter(|x| f.is_zero(&poly::eval(f, a, x))).cloned().collect()),
            None => {
                let as_q: Vec<BigRational> = a
                    .iter()
                    .map(|c| {
                        let v = f.elem_to_json(c);
                        Rationals.elem_from_json(&v).expect("rational coefficients")
                    })
                    .collect();
                let qroots = rational_roots(&as_q);
                Ok(qroots
                    .iter()
                    .map(|r| f.elem_from_json(&Rationals.elem_to_json(r)).expect("rational root"))
                    .collect())
            }
        }
    }
}

/// Distinct rational roots by the rational root theorem.
pub fn rational_roots(a: &[BigRational]) -> Vec<BigRational> {
    let q = Rationals;
    let a = poly::trim(&q, a.to_vec());
    if a.len() <= 1 {
        return Vec::new();
    }
    // clear denominators
    let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut out = Vec::new();
    let mut start = 0;
    while ints[start].is_zero() {
        start += 1;
    }
    if start > 0 {
        out.push(BigRational::zero());
    }
    let a0 = ints[start].abs();
    let an = ints.last().unwrap().abs();
    let dp = divisors(&a0);
    let dq = divisors(&an);
    let mut cands: Vec<BigRational> = Vec::new();
    for p in &dp {
        for qq in &dq {
            for sgn in [1i64, -1] {
                let r = BigRational::new(p * BigInt::from(sgn), qq.clone());
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
        }
    }
    for r in cands {
        if q.is_zero(&poly::eval(&q, &a, &r)) && !out.contains(&r) {
            out.push(r);
        }
    }
    out.sort();
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.to_u64().expect("desk-scale integer coefficients");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}

/// Length of a composition series of `m` over `e`.
pub fn module_length<F: Field>(e: &FinDimAlgebra<F>, m: &AlgebraModule<F>) -> Result<usize, AlgebraError> {
    analyze(e)?.length(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffalg::findim::{matrix_algebra, product, truncated_poly_algebra, upper_triangular};
    use crate::exactlin::PrimeField;

    #[test]
    fn spec_examples() {
        let f = PrimeField::new(5).unwrap();
        let d = truncated_poly_algebra(&f, &[0, 0, 1]);
        let reg = AlgebraModule::regular(&d);
        let data = analyze(&d).unwrap();
        assert_eq!(data.length(&reg).unwrap(), 2);
        assert_eq!(data.length_by_layers(&reg).unwrap(), 2);
        let k = FinDimAlgebra::base(&f);
        assert_eq!(module_length(&k, &AlgebraModule::free_over_base(&f, 3)).unwrap(), 3);
        assert_eq!(module_length(&k, &AlgebraModule::free_over_base(&f, 0)).unwrap(), 0);
    }

    #[test]
    fn matrix_algebra_lengths() {
        let f = PrimeField::new(5).unwrap();
        let m2 = matrix_algebra(&f, 2);
        let reg = AlgebraModule::regular(&m2);
        // M_2(k) is the sum of two copies of the 2-dimensional simple module
        assert_eq!(module_length(&m2, &reg).unwrap(), 2);
        let u = upper_triangular(&f, 3);
        assert_eq!(module_length(&u, &AlgebraModule::regular(&u)).unwrap(), 6);
    }

    #[test]
    fn non_split_blocks_over_finite_fields() {
        // F_25 = F_5[t]/(t^2+2) as a 2-dimensional F_5-algebra: length 1 on itself
        let f = PrimeField::new(5).unwrap();
        let e = truncated_poly_algebra(&f, &[2, 0, 1]);
        let data = analyze(&e).unwrap();
        assert_eq!(data.simple_dims(), &[2]);
        assert_eq!(data.length(&AlgebraModule::regular(&e)).unwrap(), 1);
        // F_5 × F_5 splits into two 1-dimensional blocks
        let split = truncated_poly_algebra(&f, &[4, 0, 1]);
        assert_eq!(analyze(&split).unwrap().simple_dims(), &[1, 1]);
    }

    #[test]
    fn additivity_on_direct_sums() {
        let f = PrimeField::new(3).unwrap();
        let u = upper_triangular(&f, 2);
        let p = product(&[&u, &truncated_poly_algebra(&f, &[0, 0, 1])]);
        let reg = AlgebraModule::regular(&p);
        let data = analyze(&p).unwrap();
        let a = data.length(&reg).unwrap();
        let sum = reg.direct_sum(&reg);
        assert_eq!(data.length(&sum).unwrap(), 2 * a);
        // T_2 contributes 1 + 2, k[e] contributes 2
        assert_eq!(a, 5);
    }

    #[test]
    fn module_axioms_checked() {
        let f = PrimeField::new(5).unwrap();
        let d = truncated_poly_algebra(&f, &[0, 0, 1]);
        let bad = vec![Matrix::identity(&f, 1), Matrix::identity(&f, 1)];
        assert!(AlgebraModule::new(&d, 1, bad).is_err());
        let good = vec![Matrix::identity(&f, 1), Matrix::zeros(&f, 1, 1)];
        assert!(AlgebraModule::new(&d, 1, good).is_ok());
    }

    #[test]
    fn rational_root_search() {
        let q = Rationals;
        let a = poly::from_i64s(&q, &[-2, 1, 2]); // 2x^2 + x - 2 has no rational roots
        assert!(rational_roots(&a).is_empty());
        let b = poly::from_i64s(&q, &[0, -1, 0, 4]); // x(2x-1)(2x+1)
        let r = rational_roots(&b);
        assert_eq!(r.len(), 3);
        let qm = matrix_algebra(&q, 2);
        assert_eq!(module_length(&qm, &AlgebraModule::regular(&qm)).unwrap(), 2);
    }
}
