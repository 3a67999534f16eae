//! Exact triangles as cone data, Auslander–Reiten triangles over k[ε], and
//! Schanuel-type checks.

use std::collections::BTreeMap;

use rand::RngCore;

use super::barcode::barcode_by_ranks;
use super::complex::{ChainMap, GradedMap, PerfectComplex};
use super::hom::HomComplex;
use super::PerfcxError;
use crate::coeffalg::{AlgMatrix, CoeffAlgebra};
use crate::exactlin::{Field, Matrix};

/// A → B → C → ΣA with g∘f null-homotopic through `homotopy`
/// (σ^i: A^i → C^{i−1}, g f = d_C σ + σ d_A).
#[derive(Clone, Debug)]
pub struct Triangle<F: Field> {
    pub a: PerfectComplex<F>,
    pub b: PerfectComplex<F>,
    pub c: PerfectComplex<F>,
    pub f: ChainMap<F>,
    pub g: ChainMap<F>,
    pub h: ChainMap<F>,
    pub homotopy: GradedMap<F>,
}

/// The standard triangle A → B → cone(f) → ΣA.
pub fn cone<F: Field>(f: &ChainMap<F>) -> Result<Triangle<F>, PerfcxError> {
    f.validate()?;
    let (a, b) = (f.source(), f.target());
    let alg = a.algebra();
    let mut ranks = BTreeMap::new();
    for (&i, &r) in b.ranks() {
        *ranks.entry(i).or_insert(0) += r;
    }
    for (&i, &r) in a.ranks() {
        *ranks.entry(i - 1).or_insert(0) += r;
    }
    let rk = |i: i32| ranks.get(&i).copied().unwrap_or(0);
    let mut diffs = BTreeMap::new();
    for &i in ranks.keys() {
        if rk(i + 1) == 0 {
            continue;
        }
        let mut d = AlgMatrix::zeros(rk(i + 1), rk(i));
        let (bi, bi1) = (b.rank(i), b.rank(i + 1));
        d.set_block(0, 0, &b.diff(i));
        d.set_block(0, bi, &f.comp(i + 1));
        d.set_block(bi1, bi, &a.diff(i + 1).neg(alg));
        diffs.insert(i, d);
    }
    let c = PerfectComplex::new_unchecked(alg, ranks.clone(), diffs)?;
    let mut g = BTreeMap::new();
    let mut h = BTreeMap::new();
    let mut s = BTreeMap::new();
    for &i in ranks.keys() {
        let (bi, ai1) = (b.rank(i), a.rank(i + 1));
        if bi > 0 {
            let mut m = AlgMatrix::zeros(rk(i), bi);
            m.set_block(0, 0, &AlgMatrix::identity(alg, bi));
            g.insert(i, m);
        }
        if ai1 > 0 {
            let mut m = AlgMatrix::zeros(ai1, rk(i));
            m.set_block(0, bi, &AlgMatrix::identity(alg, ai1));
            h.insert(i, m);
            let mut sm = AlgMatrix::zeros(rk(i), ai1);
            sm.set_block(bi, 0, &AlgMatrix::identity(alg, ai1));
            s.insert(i + 1, sm);
        }
    }
    let sa = a.shift(1);
    Ok(Triangle {
        a: a.clone(),
        b: b.clone(),
        g: ChainMap::new_unchecked(b, &c, g)?,
        h: ChainMap::new_unchecked(&c, &sa, h)?,
        c,
        f: f.clone(),
        homotopy: s,
    })
}

impl<F: Field> Triangle<F> {
    /// A triangle given by three maps; g∘f must be null-homotopic and the
    /// comparison map cone(f) → C must be a homotopy equivalence.
    pub fn from_maps(f: ChainMap<F>, g: ChainMap<F>, h: ChainMap<F>) -> Result<Self, PerfcxError> {
        f.validate()?;
        g.validate()?;
        h.validate()?;
        let gf = g.compose_after(&f);
        let hc = HomComplex::new(f.source(), g.target())?;
        let homotopy = hc.null_homotopy(&gf).ok_or(PerfcxError::NotNullHomotopic)?;
        let t = Triangle {
            a: f.source().clone(),
            b: f.target().clone(),
            c: g.target().clone(),
            f,
            g,
            h,
            homotopy,
        };
        t.certify()?;
        Ok(t)
    }

    /// Checks g∘f = dσ + σd and that [g, σ]: cone(f) → C is a homotopy
    /// equivalence (its cone is acyclic over k).
    pub fn certify(&self) -> Result<(), PerfcxError> {
        let alg = self.a.algebra();
        for &i in self.a.ranks().keys() {
            let gf = self.g.comp(i).mul(alg, &self.f.comp(i));
            let mut rhs = AlgMatrix::zeros(self.c.rank(i), self.a.rank(i));
            if let Some(s) = self.homotopy.get(&i) {
                rhs = rhs.add(alg, &self.c.diff(i - 1).mul(alg, s));
            }
            if let Some(s) = self.homotopy.get(&(i + 1)) {
                rhs = rhs.add(alg, &s.mul(alg, &self.a.diff(i)));
            }
            if gf != rhs {
                return Err(PerfcxError::NotNullHomotopic);
            }
        }
        let cf = cone(&self.f)?.c;
        let mut phi = BTreeMap::new();
        for &i in cf.ranks().keys() {
            if self.c.rank(i) == 0 {
                continue;
            }
            let mut m = AlgMatrix::zeros(self.c.rank(i), cf.rank(i));
            m.set_block(0, 0, &self.g.comp(i));
            if let Some(s) = self.homotopy.get(&(i + 1)) {
                m.set_block(0, self.b.rank(i), s);
            }
            phi.insert(i, m);
        }
        let phi = ChainMap::new(&cf, &self.c, phi)?;
        if !cone(&phi)?.c.is_acyclic()? {
            return Err(PerfcxError::Certificate("third term is not equivalent to the cone".into()));
        }
        Ok(())
    }

    /// The objects …, Σ^{-1}C, A, B, C, ΣA, … as (object index 0..3, shift):
    /// position 3k + j holds Σ^k of (A, B, C)[j].
    pub fn object_at(&self, pos: i64) -> PerfectComplex<F> {
        let k = pos.div_euclid(3) as i32;
        match pos.rem_euclid(3) {
            0 => self.a.shift(k),
            1 => self.b.shift(k),
            _ => self.c.shift(k),
        }
    }
}

/// X_{n+1,r} → B → X_{n,r} → ΣX_{n+1,r} with third map ε (placed in degree
/// n), where B = Σ^{-1} cone(ε) ≃ X_{n+1,r−1} ⊕ X_{n,r+1}.
pub fn ar_triangle<F: Field>(alg: &CoeffAlgebra<F>, n: i32, r: usize) -> Result<Triangle<F>, PerfcxError> {
    if !alg.is_dual_numbers() {
        return Err(PerfcxError::Unsupported("AR triangles are built over k[e]".into()));
    }
    let a = PerfectComplex::string(alg, n + 1, r);
    let c = PerfectComplex::string(alg, n, r);
    let sa = a.shift(1);
    // ε in the lowest degree only: ε in every degree is (r+1) times this
    // class up to homotopy, which vanishes when the characteristic divides r+1
    let eps = ChainMap::new(&c, &sa, BTreeMap::from([(n, AlgMatrix::from_fn(alg, 1, 1, |_, _| alg.gen()))]))?;
    let ch = cone(&eps)?;
    // rotate C → ΣA → cone → ΣC back by one step
    let f = ch.g.shift(-1);
    let g = ch.h.shift(-1);
    let f = ChainMap::new_unchecked(&a, f.target(), f.comps().clone())?;
    let g = ChainMap::new_unchecked(g.source(), &c, g.comps().clone())?;
    Triangle::from_maps(f, g, eps)
}

/// Barcodes of A ⊕ B′ ⊕ C and A′ ⊕ B ⊕ C′ agree.
pub fn schanuel_triangle_check<F: Field>(t1: &Triangle<F>, t2: &Triangle<F>) -> Result<bool, PerfcxError> {
    let left = t1.a.direct_sum(&t2.b).direct_sum(&t1.c);
    let right = t2.a.direct_sum(&t1.b).direct_sum(&t2.c);
    Ok(barcode_by_ranks(&left)? == barcode_by_ranks(&right)?)
}

/// Even-indexed ranks of P plus odd-indexed ranks of Q against the reverse.
pub fn schanuel_free_parity_check(p: &[usize], q: &[usize]) -> Result<bool, PerfcxError> {
    if p.len() != q.len() {
        return Err(PerfcxError::Shape { degree: 0, expected: (p.len(), 0), got: (q.len(), 0) });
    }
    let sum = |v: &[usize], parity: usize| -> usize { v.iter().enumerate().filter(|(i, _)| i % 2 == parity).map(|(_, x)| x).sum() };
    Ok(sum(p, 0) + sum(q, 1) == sum(p, 1) + sum(q, 0))
}

/// A → B ⊕ cone(id_D) → cone → ΣA.
pub fn mutate_add_contractible<F: Field>(t: &Triangle<F>, d: &PerfectComplex<F>) -> Result<Triangle<F>, PerfcxError> {
    let p = cone(&ChainMap::identity(d))?.c;
    let b2 = t.b.direct_sum(&p);
    let comps = t
        .f
        .comps()
        .iter()
        .map(|(&i, m)| {
            let mut big = AlgMatrix::zeros(b2.rank(i), t.a.rank(i));
            big.set_block(0, 0, m);
            (i, big)
        })
        .collect();
    cone(&ChainMap::new(&t.a, &b2, comps)?)
}

/// f ⊕ id_D: A ⊕ D → B ⊕ D.
pub fn mutate_sum_with_identity<F: Field>(t: &Triangle<F>, d: &PerfectComplex<F>) -> Result<Triangle<F>, PerfcxError> {
    cone(&t.f.direct_sum(&ChainMap::identity(d)))
}

/// Replaces B by an isomorphic copy through a random degree-wise base-field
/// automorphism.
pub fn mutate_scramble<F: Field>(t: &Triangle<F>, rng: &mut dyn RngCore) -> Result<Triangle<F>, PerfcxError> {
    let alg = t.b.algebra();
    let f = alg.field();
    let mut p = BTreeMap::new();
    let mut pinv = BTreeMap::new();
    for (&i, &r) in t.b.ranks() {
        let (m, mi) = loop {
            let m = Matrix::random(f, r, r, rng);
            if let Some(mi) = m.inverse() {
                break (m, mi);
            }
        };
        p.insert(i, AlgMatrix::from_field_matrix(alg, &m));
        pinv.insert(i, AlgMatrix::from_field_matrix(alg, &mi));
    }
    // new coordinates = P^{-1}·old, so d' = P^{-1} d P and f' = P^{-1} f
    let b2 = t.b.change_basis(&p, &pinv);
    let comps = t.f.comps().iter().map(|(&i, m)| (i, pinv[&i].mul(alg, m))).collect();
    cone(&ChainMap::new(&t.a, &b2, comps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perfcx::{barcode_by_ranks, homotopy_equivalent, Barcode};
    use crate::exactlin::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dual() -> CoeffAlgebra<PrimeField> {
        CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
    }

    #[test]
    fn cone_examples() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 1);
        let t = cone(&ChainMap::identity(&x)).unwrap();
        assert!(homotopy_equivalent(&t.c, &PerfectComplex::zero(&a)).unwrap());
        t.certify().unwrap();
        let y = PerfectComplex::string(&a, 2, 0);
        let z = cone(&ChainMap::zero(&x, &y)).unwrap();
        assert!(homotopy_equivalent(&z.c, &y.direct_sum(&x.shift(1))).unwrap());
        assert!(z.g.validate().is_ok() && z.h.validate().is_ok());
    }

    #[test]
    fn ar_triangle_shapes() {
        for p in [2, 3, 5] {
            let a = CoeffAlgebra::dual_numbers(&PrimeField::new(p).unwrap());
            ar_shapes_over(&a);
        }
    }

    fn ar_shapes_over(a: &CoeffAlgebra<PrimeField>) {
        let a = a.clone();
        for n in -2..=2 {
            for r in 0..=6 {
                let t = ar_triangle(&a, n, r).unwrap();
                let mut expect = Barcode::single(n, r + 1);
                if r > 0 {
                    expect = expect.merge(&Barcode::single(n + 1, r - 1));
                }
                assert_eq!(barcode_by_ranks(&t.b).unwrap(), expect, "p={} n={n} r={r}", a.field().characteristic());
                assert_eq!(t.a, PerfectComplex::string(&a, n + 1, r));
                assert_eq!(t.c, PerfectComplex::string(&a, n, r));
            }
        }
    }

    #[test]
    fn non_triangles_rejected() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 0);
        let id = ChainMap::identity(&x);
        let zero = ChainMap::zero(&x, &x.shift(1));
        assert!(Triangle::from_maps(id.clone(), id, zero).is_err());
    }

    #[test]
    fn schanuel_examples() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 1);
        let t = ar_triangle(&a, 0, 1).unwrap();
        assert!(schanuel_triangle_check(&t, &t).unwrap());
        let t2 = mutate_add_contractible(&t, &x).unwrap();
        assert!(schanuel_triangle_check(&t, &t2).unwrap());
        let t3 = mutate_sum_with_identity(&t, &x).unwrap();
        assert!(schanuel_triangle_check(&t, &t3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t4 = mutate_scramble(&t, &mut rng).unwrap();
        assert!(schanuel_triangle_check(&t, &t4).unwrap());
        assert!(schanuel_free_parity_check(&[1, 1, 1], &[1, 1, 1]).unwrap());
        assert!(!schanuel_free_parity_check(&[1, 2, 1], &[1, 1, 1]).unwrap());
        assert!(schanuel_free_parity_check(&[1], &[1, 1]).is_err());
    }
}
