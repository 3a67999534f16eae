//! Exact coefficient fields: prime fields, their finite extensions and the rationals.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde_json::Value;

use super::LinError;

/// An exact field. Elements are plain values; all arithmetic goes through the
/// field object so that moduli are never stored per element.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u128>;
    /// Degree over the prime field (1 for prime fields and for Q).
    fn prime_degree(&self) -> usize {
        1
    }
    /// Coordinates over F_p (finite fields only).
    fn to_prime_coords(&self, _a: &Self::Elem) -> Option<Vec<u64>> {
        None
    }
    fn from_prime_coords(&self, _c: &[u64]) -> Option<Self::Elem> {
        None
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, LinError>;
    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let bi = self.inv(b).expect("division by zero");
        self.mul(a, &bi)
    }

    /// `a + b * c`
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// All elements, for finite fields small enough to enumerate.
    fn enumerate(&self, limit: u128) -> Option<Vec<Self::Elem>> {
        let q = self.order()?;
        if q > limit {
            return None;
        }
        let p = self.characteristic();
        let m = self.prime_degree();
        let mut out = Vec::with_capacity(q as usize);
        let mut coords = vec![0u64; m];
        for _ in 0..q {
            out.push(self.from_prime_coords(&coords)?);
            for c in coords.iter_mut() {
                *c += 1;
                if *c < p {
                    break;
                }
                *c = 0;
            }
        }
        Some(out)
    }
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p with p < 2^31, elements stored as canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinError> {
        if p >= 1 << 31 || !is_prime_u64(p) {
            return Err(LinError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn mul_add(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        (a + b * c) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed integers
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<u128> {
        Some(self.p as u128)
    }
    fn to_prime_coords(&self, a: &u64) -> Option<Vec<u64>> {
        Some(vec![*a])
    }
    fn from_prime_coords(&self, c: &[u64]) -> Option<u64> {
        Some(c.first().copied().unwrap_or(0) % self.p)
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn elem_to_json(&self, a: &u64) -> Value {
        Value::from(*a)
    }
    fn elem_from_json(&self, v: &Value) -> Result<u64, LinError> {
        match v.as_i64() {
            Some(n) => Ok(self.from_i64(n)),
            None => Err(LinError::Parse(format!("expected integer over F_{}, got {v}", self.p))),
        }
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// Polynomial helpers on raw `u64` coefficient vectors over F_p, low degree first.
pub(crate) mod fp_poly {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
        let d = m.len() - 1;
        let mut r = a.to_vec();
        while r.len() > d {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - d;
            if lead != 0 {
                for (k, c) in m.iter().enumerate() {
                    let idx = shift + k;
                    r[idx] = (r[idx] + (p - lead) * c) % p;
                }
            }
            r.pop();
        }
        trim(r)
    }

    /// Whether `m` (monic) divides `a`.
    pub fn divides(p: u64, m: &[u64], a: &[u64]) -> bool {
        rem_monic(p, a, m).is_empty()
    }

    /// First monic factor of degree between 1 and deg(f)/2, by trial division.
    pub fn small_factor(p: u64, f: &[u64]) -> Option<Vec<u64>> {
        let n = f.len().saturating_sub(1);
        for d in 1..=n / 2 {
            let count = (p as u128).pow(d as u32);
            let mut coeffs = vec![0u64; d];
            for _ in 0..count {
                let mut g = coeffs.clone();
                g.push(1);
                if divides(p, &g, f) {
                    return Some(g);
                }
                for c in coeffs.iter_mut() {
                    *c += 1;
                    if *c < p {
                        break;
                    }
                    *c = 0;
                }
            }
        }
        None
    }
}

/// The finite field F_p[t]/(f) for a monic irreducible f.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    base: PrimeField,
    modulus: Arc<Vec<u64>>,
}

impl ExtensionField {
    /// Builds F_p[t]/(f). `f` is given low degree first and must be monic and
    /// irreducible; a reducible modulus is rejected with a witness factor.
    pub fn new(base: PrimeField, f: &[u64]) -> Result<Self, LinError> {
        let p = base.modulus();
        let f = fp_poly::trim(f.iter().map(|c| c % p).collect());
        if f.len() < 2 || *f.last().unwrap() != 1 {
            return Err(LinError::NotMonic);
        }
        if let Some(w) = fp_poly::small_factor(p, &f) {
            return Err(LinError::Reducible { witness: w });
        }
        Ok(ExtensionField { base, modulus: Arc::new(f) })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The lexicographically first monic irreducible polynomial of the given
    /// degree over F_p, as an extension field.
    pub fn first_of_degree(base: PrimeField, degree: usize) -> Self {
        let p = base.modulus();
        let mut coeffs = vec![0u64; degree];
        loop {
            let mut f = coeffs.clone();
            f.push(1);
            if coeffs[0] != 0 && fp_poly::small_factor(p, &f).is_none() {
                return ExtensionField { base, modulus: Arc::new(f) };
            }
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < p {
                    break;
                }
                *c = 0;
            }
        }
    }

    /// The image of a base-field scalar.
    pub fn embed(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = a % self.base.modulus();
        v
    }

    /// The class of t.
    pub fn generator(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        if self.degree() > 1 {
            v[1] = 1;
        } else {
            // t = -f_0 when f = t + f_0
            v[0] = self.base.neg(&self.modulus[0]);
        }
        v
    }

    fn pad(&self, a: Vec<u64>) -> Vec<u64> {
        let mut a = a;
        a.resize(self.degree(), 0);
        a
    }
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|c| *c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.base.modulus();
        let prod = fp_poly::mul(p, a, b);
        self.pad(fp_poly::rem_monic(p, &prod, &self.modulus))
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let q = self.order().unwrap();
        Some(self.pow(a, q - 2))
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        self.embed(self.base.from_i64(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.modulus()
    }
    fn order(&self) -> Option<u128> {
        Some((self.base.modulus() as u128).pow(self.degree() as u32))
    }
    fn prime_degree(&self) -> usize {
        self.degree()
    }
    fn to_prime_coords(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        Some(a.clone())
    }
    fn from_prime_coords(&self, c: &[u64]) -> Option<Vec<u64>> {
        let p = self.base.modulus();
        let mut v: Vec<u64> = c.iter().map(|x| x % p).collect();
        v.resize(self.degree(), 0);
        Some(v)
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> Vec<u64> {
        (0..self.degree()).map(|_| self.base.random_elem(rng)).collect()
    }
    fn elem_to_json(&self, a: &Vec<u64>) -> Value {
        Value::from(fp_poly::trim(a.clone()))
    }
    fn elem_from_json(&self, v: &Value) -> Result<Vec<u64>, LinError> {
        let arr = v
            .as_array()
            .ok_or_else(|| LinError::Parse(format!("expected coefficient list, got {v}")))?;
        let mut c = Vec::with_capacity(arr.len());
        for x in arr {
            let n = x
                .as_i64()
                .ok_or_else(|| LinError::Parse(format!("expected integer, got {x}")))?;
            c.push(self.base.from_i64(n));
        }
        let r = fp_poly::rem_monic(self.base.modulus(), &fp_poly::trim(c), &self.modulus);
        Ok(self.pad(r))
    }
    fn name(&self) -> String {
        let terms: Vec<String> = self
            .modulus
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match (i, *c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        format!("F_{}[t]/({})", self.base.modulus(), terms.join("+"))
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u128> {
        None
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> BigRational {
        let num: i64 = rng.gen_range(-4..=4);
        let den: i64 = if rng.gen_bool(0.25) { rng.gen_range(2..=3) } else { 1 };
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn elem_to_json(&self, a: &BigRational) -> Value {
        if a.is_integer() {
            if let Some(n) = a.numer().to_i64() {
                return Value::from(n);
            }
            return Value::from(a.numer().to_string());
        }
        Value::from(format!("{}/{}", a.numer(), a.denom()))
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigRational, LinError> {
        if let Some(n) = v.as_i64() {
            return Ok(self.from_i64(n));
        }
        let s = v
            .as_str()
            .ok_or_else(|| LinError::Parse(format!("expected rational, got {v}")))?;
        parse_rational(s)
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

fn parse_rational(s: &str) -> Result<BigRational, LinError> {
    let bad = || LinError::Parse(format!("bad rational literal {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let b = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &b), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn extension_rejects_reducible_modulus() {
        let f5 = PrimeField::new(5).unwrap();
        // x^2 + 1 = (x + 2)(x + 3) over F_5
        match ExtensionField::new(f5, &[1, 0, 1]) {
            Err(LinError::Reducible { witness }) => assert_eq!(witness, vec![2, 1]),
            other => panic!("unexpected {other:?}"),
        }
        assert!(ExtensionField::new(f5, &[2, 0, 1]).is_ok());
        assert!(ExtensionField::new(f5, &[3, 0, 1]).is_ok());
    }

    #[test]
    fn extension_field_is_a_field() {
        let f5 = PrimeField::new(5).unwrap();
        let e = ExtensionField::new(f5, &[2, 0, 1]).unwrap();
        let all = e.enumerate(1000).unwrap();
        assert_eq!(all.len(), 25);
        for a in all.iter().filter(|a| !e.is_zero(a)) {
            let b = e.inv(a).unwrap();
            assert_eq!(e.mul(a, &b), e.one());
        }
        // t^2 = -2 = 3
        let t = e.generator();
        assert_eq!(e.mul(&t, &t), vec![3, 0]);
    }

    #[test]
    fn rational_json_round_trip() {
        let q = Rationals;
        let a = BigRational::new(BigInt::from(-3), BigInt::from(6));
        let v = q.elem_to_json(&a);
        assert_eq!(v, Value::from("-1/2"));
        assert_eq!(q.elem_from_json(&v).unwrap(), a);
        assert_eq!(q.elem_to_json(&q.from_i64(4)), Value::from(4));
    }
}
