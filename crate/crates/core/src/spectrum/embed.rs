use serde::Serialize;

use super::SpectrumError;
use crate::coeffalg::{residue_field, AlgMatrix, AlgebraKind, CoeffAlgebra, PrimeDatum};
use crate::cohfun::{CohFunction, Label};
use crate::exactlin::{poly, poly_matrix_rank, Field, Poly};
use crate::perfcx::PerfectComplex;

/// p ↦ [χ_{k(p)}]; over k[ε] the maximal ideal goes to [χ_k].
pub fn rho<F: Field>(alg: &CoeffAlgebra<F>, p: &PrimeDatum<F>) -> Result<Label<F>, SpectrumError> {
    residue_field(alg, p)?;
    Ok(match p {
        PrimeDatum::DualMaximal => Label::Simple { shift: 0 },
        _ => Label::Residue { prime: p.clone(), shift: 0 },
    })
}

/// cone(f: A → A), i.e. A --f--> A in degrees −1, 0.
pub fn cone_of_scalar<F: Field>(alg: &CoeffAlgebra<F>, f: &Poly<F>) -> PerfectComplex<F> {
    PerfectComplex::two_term(alg, -1, AlgMatrix::from_fn(alg, 1, 1, |_, _| f.clone()))
}

/// A probe cone(f) with f in exactly one of p, q.
pub fn separating_probe<F: Field>(alg: &CoeffAlgebra<F>, p: &PrimeDatum<F>, q: &PrimeDatum<F>) -> Option<PerfectComplex<F>> {
    match (p, q) {
        (PrimeDatum::Principal(f), _) | (PrimeDatum::Zero, PrimeDatum::Principal(f)) if p != q => Some(cone_of_scalar(alg, f)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub first: String,
    pub second: String,
    pub probe: Option<String>,
}

/// For every pair of primes, a probe on which the profiles of the two
/// residue functions differ: the given probes first, then the generated
/// cone(f). A pair without one is a collision.
pub fn rho_injectivity_check<F: Field>(
    alg: &CoeffAlgebra<F>,
    primes: &[PrimeDatum<F>],
    probes: &[(String, PerfectComplex<F>)],
) -> Result<Vec<Separation>, SpectrumError> {
    let field = alg.field();
    let funcs = primes.iter().map(|p| CohFunction::of_label(alg, &rho(alg, p)?).map_err(SpectrumError::from)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for i in 0..primes.len() {
        for j in i + 1..primes.len() {
            let mut cands = probes.to_vec();
            if let Some(c) = separating_probe(alg, &primes[i], &primes[j]) {
                let name = match (&primes[i], &primes[j]) {
                    (PrimeDatum::Principal(f), _) | (_, PrimeDatum::Principal(f)) => format!("cone({})", poly::display(field, f, "x")),
                    _ => unreachable!(),
                };
                cands.push((name, c));
            }
            let mut probe = None;
            for (name, c) in &cands {
                if funcs[i].profile(c)? != funcs[j].profile(c)? {
                    probe = Some(name.clone());
                    break;
                }
            }
            out.push(Separation { first: primes[i].label(field), second: primes[j].label(field), probe });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuppReport {
    pub support: Vec<String>,
    pub generic: bool,
    pub violation: Option<String>,
}

/// Computes supp X on the sample and checks: if (0) ∈ supp, every sampled
/// prime is in supp; otherwise a principal p is in supp exactly when it
/// divides the gcd of the ρ-minors of some differential of generic rank ρ.
pub fn supp_dichotomy_check<F: Field>(x: &PerfectComplex<F>, primes: &[PrimeDatum<F>]) -> Result<SuppReport, SpectrumError> {
    let alg = x.algebra();
    if !matches!(alg.kind(), AlgebraKind::PolyRing) {
        return Err(SpectrumError::Unsupported("supports are computed over k[x]".into()));
    }
    let field = alg.field();
    let mut inside = Vec::new();
    for p in primes {
        inside.push(!CohFunction::residue(alg, p)?.profile(x)?.is_empty());
    }
    let generic = match primes.iter().position(|p| *p == PrimeDatum::Zero) {
        Some(z) => inside[z],
        None => {
            let chi = CohFunction::residue(alg, &PrimeDatum::Zero)?;
            !chi.profile(x)?.is_empty()
        }
    };
    let support = primes.iter().zip(&inside).filter(|(_, &b)| b).map(|(p, _)| p.label(field)).collect();
    let mut violation = None;
    if generic {
        if let Some((p, _)) = primes.iter().zip(&inside).find(|(_, &b)| !b) {
            violation = Some(format!("generic point in the support but {} is not", p.label(field)));
        }
    } else {
        let fitting: Vec<Poly<F>> = x
            .diffs()
            .values()
            .map(|d| d.to_poly_matrix(alg))
            .filter_map(|m| match poly_matrix_rank(&m) {
                0 => None,
                r => Some(m.minors_gcd(r)),
            })
            .collect();
        for (p, &b) in primes.iter().zip(&inside) {
            let divides = match p {
                PrimeDatum::Principal(f) => fitting.iter().any(|g| poly::rem(field, g, f).is_empty()),
                _ => false,
            };
            if divides != b {
                violation = Some(format!(
                    "{} {} the support but {} a Fitting invariant",
                    p.label(field),
                    if b { "is in" } else { "is not in" },
                    if divides { "divides" } else { "does not divide" }
                ));
                break;
            }
        }
    }
    Ok(SuppReport { support, generic, violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;

    fn setup() -> (PrimeField, CoeffAlgebra<PrimeField>, Vec<PrimeDatum<PrimeField>>) {
        let f = PrimeField::new(5).unwrap();
        let a = CoeffAlgebra::poly_ring(&f);
        let primes = [vec![0, 1], vec![4, 1], vec![3, 1], vec![2, 0, 1], vec![3, 0, 1]]
            .into_iter()
            .map(|g| PrimeDatum::principal(&f, g).unwrap())
            .chain([PrimeDatum::Zero])
            .collect();
        (f, a, primes)
    }

    #[test]
    fn rho_values() {
        let (f, a, _) = setup();
        let x = PrimeDatum::principal(&f, vec![0, 1]).unwrap();
        let cx = cone_of_scalar(&a, &vec![0, 1]);
        let chi = CohFunction::of_label(&a, &rho(&a, &x).unwrap()).unwrap();
        assert_eq!(chi.eval(&cx).unwrap(), 1);
        let gen = CohFunction::of_label(&a, &rho(&a, &PrimeDatum::Zero).unwrap()).unwrap();
        assert_eq!(gen.eval(&cx).unwrap(), 0);
        assert_eq!(chi.eval(&PerfectComplex::stalk(&a, 0, 1)).unwrap(), 1);
        assert!(PrimeDatum::principal(&f, vec![4, 0, 1]).is_err());
        assert!(rho(&a, &PrimeDatum::DualMaximal).is_err());
        let d = CoeffAlgebra::dual_numbers(&f);
        assert_eq!(rho(&d, &PrimeDatum::DualMaximal).unwrap(), Label::Simple { shift: 0 });
    }

    #[test]
    fn injectivity() {
        let (_, a, primes) = setup();
        let seps = rho_injectivity_check(&a, &primes, &[]).unwrap();
        assert_eq!(seps.len(), 15);
        assert!(seps.iter().all(|s| s.probe.is_some()), "{seps:?}");
        assert!(rho_injectivity_check(&a, &primes[..1], &[]).unwrap().is_empty());
    }

    #[test]
    fn supports() {
        let (_, a, primes) = setup();
        let r = supp_dichotomy_check(&cone_of_scalar(&a, &vec![0, 1]), &primes).unwrap();
        assert_eq!((r.support.clone(), r.generic, r.violation.clone()), (vec!["(x)".to_string()], false, None));
        let r = supp_dichotomy_check(&PerfectComplex::stalk(&a, 0, 1), &primes).unwrap();
        assert!(r.generic && r.support.len() == 6 && r.violation.is_none());
        let z = cone_of_scalar(&a, &vec![]);
        let r = supp_dichotomy_check(&z, &primes).unwrap();
        assert!(r.generic && r.support.len() == 6 && r.violation.is_none());
        // (x^2 + 2)(x − 1)
        let g = poly::mul(a.field(), &vec![2, 0, 1], &vec![4, 1]);
        let r = supp_dichotomy_check(&cone_of_scalar(&a, &g), &primes).unwrap();
        assert_eq!(r.support, vec!["(x+4)".to_string(), "(x^2+2)".to_string()]);
        assert_eq!(r.violation, None);
    }
}
