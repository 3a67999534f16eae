use super::function::{CohFunction, Profile};
use super::CohfunError;
use crate::exactlin::{Field, Matrix};
use crate::perfcx::{compose_graded, HomComplex, PerfectComplex, Triangle};

/// Values of χ along ⋯ → Σ^{-1}C → A → B → C → ΣA → ⋯ for positions
/// −3w ..= 3w+2, position 3k + j holding Σ^k of (A, B, C)[j].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripTable {
    pub window: i32,
    pub values: Vec<usize>,
}

impl StripTable {
    pub fn lo(&self) -> i64 {
        -3 * self.window as i64
    }

    pub fn at(&self, pos: i64) -> usize {
        let i = pos - self.lo();
        if i < 0 || i as usize >= self.values.len() {
            0
        } else {
            self.values[i as usize]
        }
    }
}

/// A labelling X_i = strip[anchor ± i] whose partial sum at `index` is
/// negative, or nonzero although χ(X_index) = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub anchor: i64,
    pub forward: bool,
    pub index: usize,
    pub sum: i64,
}

/// Evaluates χ on the strip. The window must contain the support of every
/// shift of A, B and C with a zero margin on both sides.
pub fn strip_table<F: Field>(chi: &CohFunction<F>, t: &Triangle<F>, window: i32) -> Result<StripTable, CohfunError> {
    let profiles = [chi.profile(&t.a)?, chi.profile(&t.b)?, chi.profile(&t.c)?];
    for p in &profiles {
        if let (Some(lo), Some(hi)) = (p.keys().next(), p.keys().next_back()) {
            if *lo <= -window || *hi >= window {
                return Err(CohfunError::WindowTooSmall(format!("values at shifts {lo}..={hi}, window ±{window}")));
            }
        }
    }
    let mut values = Vec::with_capacity(6 * window as usize + 3);
    for k in -window..=window {
        for p in &profiles {
            values.push(p.get(&k).copied().unwrap_or(0));
        }
    }
    Ok(StripTable { window, values })
}

/// All zero-anchored labellings in both directions; returns the first
/// failure. Positions just outside the strip count as zeros.
pub fn check_strip(s: &StripTable) -> Option<Violation> {
    let (lo, hi) = (s.lo() - 1, s.lo() + s.values.len() as i64);
    for a in lo..=hi {
        if s.at(a) != 0 {
            continue;
        }
        for forward in [true, false] {
            let steps = if forward { hi - a } else { a - lo };
            let mut sum = 0i64;
            for i in 0..=steps {
                let v = s.at(if forward { a + i } else { a - i }) as i64;
                sum = v - sum;
                if sum < 0 || (v == 0 && sum != 0) {
                    return Some(Violation { anchor: a, forward, index: i as usize, sum });
                }
            }
        }
    }
    None
}

/// Checks the alternating-sum condition on every zero-anchored labelling of
/// the rotated sequence of `t`.
pub fn check_cohomological<F: Field>(chi: &CohFunction<F>, t: &Triangle<F>, window: i32) -> Result<Option<Violation>, CohfunError> {
    Ok(check_strip(&strip_table(chi, t, window)?))
}

fn extension_at(vals: &dyn Fn(i32) -> (i64, i64, i64), n: i32) -> i64 {
    let term = |i: i32| {
        let (a, b, c) = vals(i);
        a - b + c
    };
    if n >= 0 {
        (0..=n).map(|i| if i % 2 == 0 { term(i) } else { -term(i) }).sum()
    } else {
        (n..=-1).map(|i| if (i + 1) % 2 == 0 { term(i) } else { -term(i) }).sum()
    }
}

/// χ̂(F) for F = ker(Hom(−, A) → Hom(−, B)), at every anchor n in ±window
/// with χ(Σ^n(A ⊕ B ⊕ C)) = 0.
pub fn extend_chi_all<F: Field>(chi: &CohFunction<F>, t: &Triangle<F>, window: i32) -> Result<Vec<(i32, i64)>, CohfunError> {
    let (pa, pb, pc) = (chi.profile(&t.a)?, chi.profile(&t.b)?, chi.profile(&t.c)?);
    Ok(anchored_values(&[&pa, &pb, &pc], 0, window))
}

fn anchored_values(p: &[&Profile; 3], offset: i32, window: i32) -> Vec<(i32, i64)> {
    let get = |q: &Profile, i: i32| q.get(&(i + offset)).copied().unwrap_or(0) as i64;
    let vals = |i: i32| (get(p[0], i), get(p[1], i), get(p[2], i));
    (-window..=window).filter(|&n| vals(n) == (0, 0, 0)).map(|n| (n, extension_at(&vals, n))).collect()
}

fn agreed(all: Vec<(i32, i64)>, window: i32) -> Result<usize, CohfunError> {
    let Some(&(_, v)) = all.first() else {
        return Err(CohfunError::NoAnchor { window });
    };
    if all.iter().any(|&(_, w)| w != v) {
        return Err(CohfunError::AnchorDependence(all));
    }
    if v < 0 {
        return Err(CohfunError::NotCohomological(v));
    }
    Ok(v as usize)
}

/// χ̂ of the functor copresented by `t`; all anchors must agree.
pub fn extend_chi<F: Field>(chi: &CohFunction<F>, t: &Triangle<F>, window: i32) -> Result<usize, CohfunError> {
    agreed(extend_chi_all(chi, t, window)?, window)
}

/// χ̂(Σ^j F) = (χ∘Σ^j)^(F) for every j in `shifts`, with the anchor window
/// chosen from the supports.
pub fn extend_chi_shifts<F: Field>(
    chi: &CohFunction<F>,
    t: &Triangle<F>,
    shifts: std::ops::RangeInclusive<i32>,
) -> Result<Vec<(i32, usize)>, CohfunError> {
    let (pa, pb, pc) = (chi.profile(&t.a)?, chi.profile(&t.b)?, chi.profile(&t.c)?);
    let p = [&*pa, &*pb, &*pc];
    shifts
        .map(|j| {
            let w = p.iter().flat_map(|q| q.keys()).map(|k| (k - j).abs() + 1).max().unwrap_or(1);
            Ok((j, agreed(anchored_values(&p, j, w), w)?))
        })
        .collect()
}

/// dim Hom(A, X) − rank(Hom(B, X) → Hom(A, X)): the k-length of
/// Hom(F, Hom(−, X)) for F = ker(Hom(−, A) → Hom(−, B)), using that
/// Hom(−, X) is injective.
pub fn extend_chi_by_rank<F: Field>(x: &PerfectComplex<F>, t: &Triangle<F>) -> Result<usize, CohfunError> {
    let hb = HomComplex::new(&t.b, x)?;
    let ha = HomComplex::new(&t.a, x)?;
    let (cb, ca) = (hb.cohomology(0), ha.cohomology(0));
    let alg = x.algebra();
    let cols: Vec<Vec<F::Elem>> = cb
        .reps()
        .iter()
        .map(|v| ca.coords(&ha.flatten(0, &compose_graded(alg, &hb.unflatten(0, v), 0, t.f.comps()))))
        .collect();
    let rank = if cols.is_empty() { 0 } else { Matrix::from_columns(x.field(), ca.dim(), &cols).rank() };
    Ok(ca.dim() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffalg::CoeffAlgebra;
    use crate::exactlin::PrimeField;
    use crate::perfcx::{ar_triangle, cone, ChainMap};

    fn dual() -> CoeffAlgebra<PrimeField> {
        CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
    }

    #[test]
    fn cone_of_epsilon_is_fine() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 0);
        let chi = CohFunction::of_complex(&x).unwrap();
        let t = cone(&ChainMap::scalar(&x, &a.gen())).unwrap();
        assert_eq!(check_cohomological(&chi, &t, 4).unwrap(), None);
        assert!(matches!(check_cohomological(&chi, &t, 1), Err(CohfunError::WindowTooSmall(_))));
    }

    #[test]
    fn bumped_value_is_caught() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 1);
        let chi = CohFunction::of_complex(&x).unwrap();
        let t = ar_triangle(&a, 0, 1).unwrap();
        let s = strip_table(&chi, &t, 5).unwrap();
        assert_eq!(check_strip(&s), None);
        for i in 0..s.values.len() {
            let mut bad = s.clone();
            bad.values[i] += 1;
            assert!(check_strip(&bad).is_some(), "bump at {i} missed");
        }
    }

    #[test]
    fn extension_examples() {
        let a = dual();
        let c = PerfectComplex::string(&a, 0, 1);
        let chi = CohFunction::of_complex(&PerfectComplex::string(&a, 0, 2)).unwrap();
        // Hom(−, C) is copresented by C → 0 → ΣC
        let rep = cone(&ChainMap::zero(&c, &PerfectComplex::zero(&a))).unwrap();
        assert_eq!(extend_chi(&chi, &rep, 6).unwrap(), chi.eval(&c).unwrap());
        // 0 → C → C copresents the zero functor
        let deg = cone(&ChainMap::zero(&PerfectComplex::zero(&a), &c)).unwrap();
        assert_eq!(extend_chi(&chi, &deg, 6).unwrap(), 0);
        let anchors = extend_chi_all(&chi, &rep, 6).unwrap();
        assert!(anchors.len() >= 2);
        assert!(anchors.iter().any(|&(n, _)| n < 0) && anchors.iter().any(|&(n, _)| n >= 0));
    }

    #[test]
    fn extension_matches_rank_description() {
        let a = dual();
        for (n, r) in [(0, 1), (0, 0), (-1, 2)] {
            let t = ar_triangle(&a, n, r).unwrap();
            for (m, s) in [(0, 1), (1, 1), (n + 1, r), (0, 0), (2, 3)] {
                let x = PerfectComplex::string(&a, m, s);
                let chi = CohFunction::of_complex(&x).unwrap();
                let v = extend_chi(&chi, &t, 10).unwrap();
                assert_eq!(v, extend_chi_by_rank(&x, &t).unwrap());
                assert_eq!(v, usize::from((m, s) == (n + 1, r)));
            }
        }
    }
}
