//! Jacobson radicals of finite-dimensional algebras.
//!
//! In characteristic 0, or when the characteristic exceeds the dimension, the
//! radical is the kernel of the trace form (x, y) ↦ Tr(L_{xy}). In small
//! characteristic p the trace form can be degenerate on semisimple algebras, so
//! the radical is computed by the iteration
//!
//! I_{-1} = A,  I_i = { a ∈ I_{i-1} : g_i(ab) = 0 for all b ∈ A },
//!
//! where g_i(a) = (Tr(â^{p^i}) mod p^{i+1}) / p^i for an integer lift â of the
//! left regular matrix of a. After ⌊log_p n⌋ + 1 steps I_i is the radical.
//! Extension fields of small characteristic are first viewed as F_p-algebras.

use super::findim::FinDimAlgebra;
use crate::exactlin::{Field, Matrix, PrimeField};

/// Basis of the Jacobson radical of `e`.
pub fn radical<F: Field>(e: &FinDimAlgebra<F>) -> Vec<Vec<F::Elem>> {
    let f = e.field();
    let n = e.dim();
    if n == 0 {
        return Vec::new();
    }
    let p = f.characteristic();
    if p == 0 || p as usize > n * f.prime_degree() {
        return trace_form_radical(e);
    }
    // restriction of scalars to F_p
    let m = f.prime_degree();
    let big = n * m;
    // F_p-basis t^i e_a, indexed a·m + i, where t^i has prime coordinates e_i
    let scalar = |i: usize| {
        let mut c = vec![0u64; m];
        c[i] = 1;
        f.from_prime_coords(&c).unwrap()
    };
    let mut regular = Vec::with_capacity(big);
    for a in 0..n {
        for i in 0..m {
            // left multiplication by t^i e_a on the F_p-basis
            let x = e.scale(&scalar(i), &e.basis(a));
            let mut mat = vec![vec![0u64; big]; big];
            for b in 0..n {
                for j in 0..m {
                    let y = e.scale(&scalar(j), &e.basis(b));
                    let prod = e.mul(&x, &y);
                    for (k, c) in prod.iter().enumerate() {
                        for (l, v) in f.to_prime_coords(c).unwrap().into_iter().enumerate() {
                            mat[k * m + l][b * m + j] = v;
                        }
                    }
                }
            }
            regular.push(mat);
        }
    }
    let rad_fp = ciw_radical(p, &regular);
    // back to F-coordinates, then an F-basis of the span
    let vecs: Vec<Vec<F::Elem>> = rad_fp
        .iter()
        .map(|v| (0..n).map(|a| f.from_prime_coords(&v[a * m..(a + 1) * m]).unwrap()).collect())
        .collect();
    if vecs.is_empty() {
        return Vec::new();
    }
    reduce_basis(f, n, vecs)
}

/// A canonical (reduced echelon) basis of the span of `vecs`.
fn reduce_basis<F: Field>(f: &F, n: usize, vecs: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let rows = Matrix::from_rows(f, n, vecs);
    let (r, piv) = rows.rref();
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

fn trace_form_radical<F: Field>(e: &FinDimAlgebra<F>) -> Vec<Vec<F::Elem>> {
    let f = e.field();
    let n = e.dim();
    let t = e.basis_traces();
    let g = Matrix::from_fn(f, n, n, |a, b| {
        e.product_of_basis(a, b).iter().zip(&t).fold(f.zero(), |acc, (x, y)| f.mul_add(&acc, x, y))
    });
    let k = g.transpose().kernel_basis();
    if k.is_empty() {
        k
    } else {
        reduce_basis(f, n, k)
    }
}

/// Radical of the F_p-algebra spanned by the given regular-representation
/// matrices (basis element k acts by `regular[k]`, entries in 0..p).
fn ciw_radical(p: u64, regular: &[Vec<Vec<u64>>]) -> Vec<Vec<u64>> {
    let fp = PrimeField::new(p).unwrap();
    let big = regular.len();
    let mut l = 0;
    while (p as u128).pow(l + 1) <= big as u128 {
        l += 1;
    }
    let combine = |coeffs: &[u64]| -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; big]; big];
        for (k, c) in coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for (r, row) in regular[k].iter().enumerate() {
                for (s, v) in row.iter().enumerate() {
                    out[r][s] = (out[r][s] + c * v) % p;
                }
            }
        }
        out
    };
    let mut current: Vec<Vec<u64>> = (0..big)
        .map(|k| {
            let mut v = vec![0u64; big];
            v[k] = 1;
            v
        })
        .collect();
    for i in 0..=l {
        let modulus = (p as u128).pow(i + 1) as u64;
        let divisor = (p as u128).pow(i) as u64;
        let exponent = (p as u128).pow(i);
        let g = |a: &[u64]| -> u64 {
            let m = combine(a);
            let tr = int_matrix_power_trace(&m, exponent, modulus);
            debug_assert_eq!(tr % divisor, 0, "trace functional is not divisible");
            (tr / divisor) % p
        };
        let s = current.len();
        if s == 0 {
            break;
        }
        // a·e_b is column b of the regular matrix of a
        let lefts: Vec<Vec<Vec<u64>>> = current.iter().map(|a| combine(a)).collect();
        let gm = Matrix::from_fn(&fp, s, big, |j, b| {
            let prod: Vec<u64> = (0..big).map(|r| lefts[j][r][b]).collect();
            g(&prod)
        });
        let kern = gm.transpose().kernel_basis();
        current = kern
            .iter()
            .map(|c| {
                let mut v = vec![0u64; big];
                for (j, cj) in c.iter().enumerate() {
                    if *cj == 0 {
                        continue;
                    }
                    for (k, x) in current[j].iter().enumerate() {
                        v[k] = (v[k] + cj * x) % p;
                    }
                }
                v
            })
            .collect();
    }
    current
}

/// Trace of M^e computed over Z/(modulus), M given with entries in 0..p.
fn int_matrix_power_trace(m: &[Vec<u64>], mut e: u128, modulus: u64) -> u64 {
    let n = m.len();
    let md = modulus as u128;
    let mul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; n]; n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i][k] as u128;
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] = ((out[i][j] as u128 + x * b[k][j] as u128) % md) as u64;
                }
            }
        }
        out
    };
    let mut base: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| x % modulus).collect()).collect();
    let mut acc: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j) % modulus).collect()).collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    (0..n).fold(0u64, |t, i| ((t as u128 + acc[i][i] as u128) % md) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffalg::findim::{matrix_algebra, product, truncated_poly_algebra, upper_triangular};
    use crate::exactlin::{ExtensionField, Rationals};

    /// Brute force: x ∈ rad iff x·y is nilpotent for every y.
    fn brute_radical_dim(e: &FinDimAlgebra<PrimeField>) -> usize {
        let f = e.field();
        let elems = enumerate_vectors(f.modulus(), e.dim());
        let nilpotent = |x: &Vec<u64>| e.pow(x, e.dim() as u128 + 1).iter().all(|c| *c == 0);
        let count = elems
            .iter()
            .filter(|x| elems.iter().all(|y| nilpotent(&e.mul(x, y))))
            .count();
        let mut d = 0;
        while (f.modulus() as usize).pow(d) < count {
            d += 1;
        }
        d as usize
    }

    fn enumerate_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|v| (0..p).map(move |c| {
                let mut w = v.clone();
                w.push(c);
                w
            })).collect();
        }
        out
    }

    #[test]
    fn spec_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let d = truncated_poly_algebra(&f5, &[0, 0, 1]);
        assert_eq!(radical(&d), vec![vec![0, 1]]);
        let kk = product(&[&FinDimAlgebra::base(&f5), &FinDimAlgebra::base(&f5)]);
        assert!(radical(&kk).is_empty());
        let u = upper_triangular(&f5, 2);
        let r = radical(&u);
        assert_eq!(r.len(), 1);
        // E_00, E_01, E_11: the strictly upper part is E_01
        assert_eq!(r[0], vec![0, 1, 0]);
    }

    #[test]
    fn small_characteristic_matches_brute_force() {
        for p in [2u64, 3] {
            let f = PrimeField::new(p).unwrap();
            let algebras = vec![
                matrix_algebra(&f, 2),
                upper_triangular(&f, 2),
                truncated_poly_algebra(&f, &[0, 0, 0, 1]),
                truncated_poly_algebra(&f, &[1, 0, 1]),
                truncated_poly_algebra(&f, &[0, 1, 1]),
                product(&[&truncated_poly_algebra(&f, &[0, 0, 1]), &FinDimAlgebra::base(&f)]),
            ];
            for a in &algebras {
                if (p as usize).pow(a.dim() as u32) > 300 {
                    continue;
                }
                let r = radical(a);
                assert_eq!(r.len(), brute_radical_dim(a), "p = {p}, dim = {}", a.dim());
                assert!(a.is_two_sided_ideal(&r));
            }
        }
    }

    #[test]
    fn matrix_algebra_in_characteristic_two_is_semisimple() {
        // the trace form of M_2(F_2) is degenerate, the radical is not
        let f = PrimeField::new(2).unwrap();
        let m = matrix_algebra(&f, 2);
        assert!(radical(&m).is_empty());
        let u = upper_triangular(&f, 3);
        assert_eq!(radical(&u).len(), 3);
    }

    #[test]
    fn radical_of_quotient_vanishes() {
        let f = PrimeField::new(3).unwrap();
        let u = upper_triangular(&f, 3);
        let r = radical(&u);
        let (q, _) = u.quotient(&r);
        assert_eq!(q.dim(), 3);
        assert!(radical(&q).is_empty());
    }

    #[test]
    fn extension_field_scalars() {
        let f2 = PrimeField::new(2).unwrap();
        let f4 = ExtensionField::new(f2, &[1, 1, 1]).unwrap();
        let d = truncated_poly_algebra(&f4, &[f4.zero(), f4.zero(), f4.one()]);
        assert_eq!(radical(&d).len(), 1);
        let m = matrix_algebra(&f4, 2);
        assert!(radical(&m).is_empty());
    }

    #[test]
    fn rationals_use_trace_form() {
        let q = Rationals;
        let u = upper_triangular(&q, 3);
        assert_eq!(radical(&u).len(), 3);
    }
}
