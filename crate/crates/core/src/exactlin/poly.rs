//! Dense univariate polynomials over a [`Field`], stored low degree first with
//! no trailing zeros. The zero polynomial is the empty vector.

use super::field::Field;

pub type Poly<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F>) -> Poly<F> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree<F: Field>(a: &Poly<F>) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant<F: Field>(f: &F, c: F::Elem) -> Poly<F> {
    trim(f, vec![c])
}

/// The monomial `x`.
pub fn x<F: Field>(f: &F) -> Poly<F> {
    vec![f.zero(), f.one()]
}

pub fn from_i64s<F: Field>(f: &F, c: &[i64]) -> Poly<F> {
    trim(f, c.iter().map(|n| f.from_i64(*n)).collect())
}

pub fn add<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn neg<F: Field>(f: &F, a: &Poly<F>) -> Poly<F> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    add(f, a, &neg(f, b))
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &Poly<F>) -> Poly<F> {
    trim(f, a.iter().map(|x| f.mul(c, x)).collect())
}

pub fn mul<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.mul_add(&out[i + j], x, y);
        }
    }
    trim(f, out)
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
    let db = degree::<F>(b).expect("polynomial division by zero");
    let lead_inv = f.inv(b.last().unwrap()).unwrap();
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = f.mul(r.last().unwrap(), &lead_inv);
        for (k, bk) in b.iter().enumerate() {
            let t = f.mul(&c, bk);
            r[shift + k] = f.sub(&r[shift + k], &t);
        }
        q[shift] = c;
        r.pop();
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn rem<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    divrem(f, a, b).1
}

/// Exact quotient; panics when `b` does not divide `a`.
pub fn exact_div<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let (q, r) = divrem(f, a, b);
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn monic<F: Field>(f: &F, a: &Poly<F>) -> Poly<F> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let li = f.inv(l).unwrap();
            scale(f, &li, a)
        }
    }
}

/// Monic greatest common divisor (zero if both inputs vanish).
pub fn gcd<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g, g monic.
pub fn xgcd<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (constant(f, f.one()), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), constant(f, f.one()));
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match r0.last() {
        None => (Vec::new(), s0, t0),
        Some(l) => {
            let li = f.inv(l).unwrap();
            (scale(f, &li, &r0), scale(f, &li, &s0), scale(f, &li, &t0))
        }
    }
}

pub fn eval<F: Field>(f: &F, a: &Poly<F>, x: &F::Elem) -> F::Elem {
    a.iter().rev().fold(f.zero(), |acc, c| f.mul_add(c, &acc, x))
}

/// Evaluates a polynomial at a point of another field through a coefficient embedding.
pub fn eval_in<F: Field, G: Field>(
    g: &G,
    a: &Poly<F>,
    embed: &impl Fn(&F::Elem) -> G::Elem,
    x: &G::Elem,
) -> G::Elem {
    a.iter().rev().fold(g.zero(), |acc, c| g.add(&embed(c), &g.mul(&acc, x)))
}

pub fn derivative<F: Field>(f: &F, a: &Poly<F>) -> Poly<F> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
        .collect();
    trim(f, out)
}

pub fn pow_mod<F: Field>(f: &F, a: &Poly<F>, mut e: u128, m: &Poly<F>) -> Poly<F> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &constant(f, f.one()), m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
        base = rem(f, &mul(f, &base, &base), m);
        e >>= 1;
    }
    acc
}

/// Smallest-degree monic factor of `a` of degree between 1 and deg(a)/2, found
/// by trial division over a finite field. `None` means `a` is irreducible (or
/// the field is infinite and no search is possible).
pub fn trial_factor<F: Field>(f: &F, a: &Poly<F>) -> Option<Poly<F>> {
    let n = degree::<F>(a)?;
    let elems = f.enumerate(1 << 20)?;
    for d in 1..=n / 2 {
        let count = (elems.len() as u128).checked_pow(d as u32)?;
        let mut idx = vec![0usize; d];
        for _ in 0..count {
            let mut g: Poly<F> = idx.iter().map(|i| elems[*i].clone()).collect();
            g.push(f.one());
            if rem(f, a, &g).is_empty() {
                return Some(g);
            }
            for i in idx.iter_mut() {
                *i += 1;
                if *i < elems.len() {
                    break;
                }
                *i = 0;
            }
        }
    }
    None
}

/// Irreducibility over a finite field by trial division; degree-1 polynomials
/// are irreducible over any field.
pub fn is_irreducible<F: Field>(f: &F, a: &Poly<F>) -> Option<bool> {
    match degree::<F>(a) {
        None | Some(0) => Some(false),
        Some(1) => Some(true),
        Some(_) => {
            f.order()?;
            Some(trial_factor(f, a).is_none())
        }
    }
}

/// Human-readable rendering in the variable `var`, highest degree first.
pub fn display<F: Field>(f: &F, a: &Poly<F>, var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if f.is_zero(c) {
            continue;
        }
        let cs = f.elem_to_json(c).to_string().trim_matches('"').to_string();
        let t = match i {
            0 => cs,
            1 if f.is_one(c) => var.to_string(),
            1 => format!("{cs}{var}"),
            _ if f.is_one(c) => format!("{var}^{i}"),
            _ => format!("{cs}{var}^{i}"),
        };
        terms.push(t);
    }
    terms.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{PrimeField, Rationals};

    #[test]
    fn division_identity() {
        let f = PrimeField::new(5).unwrap();
        let a = from_i64s(&f, &[1, 2, 3, 4, 1]);
        let b = from_i64s(&f, &[2, 0, 1]);
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn xgcd_bezout() {
        let q = Rationals;
        let a = from_i64s(&q, &[-1, 0, 1]);
        let b = from_i64s(&q, &[1, 1]);
        let (g, s, t) = xgcd(&q, &a, &b);
        assert_eq!(g, from_i64s(&q, &[1, 1]));
        assert_eq!(add(&q, &mul(&q, &s, &a), &mul(&q, &t, &b)), g);
    }

    #[test]
    fn irreducibility_over_f5() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(is_irreducible(&f, &from_i64s(&f, &[2, 0, 1])), Some(true));
        assert_eq!(is_irreducible(&f, &from_i64s(&f, &[3, 0, 1])), Some(true));
        assert_eq!(is_irreducible(&f, &from_i64s(&f, &[1, 0, 1])), Some(false));
        assert_eq!(is_irreducible(&f, &from_i64s(&f, &[0, 1])), Some(true));
    }
}
