use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use super::module::FinModule;
use super::CohfunError;
use crate::coeffalg::{analyze, residue_field, AlgebraModule, CoeffAlgebra, FinDimAlgebra, PrimeDatum, ResidueField, SemisimpleData};
use crate::exactlin::{poly_matrix_rank, ExtensionField, Field, Matrix};
use crate::perfcx::{EndAlgebra, HomComplex, PerfectComplex};

/// k ↦ χ(Σ^k C), zero values omitted.
pub type Profile = BTreeMap<i32, usize>;

/// An irreducible cohomological function.
///
/// `Object { n, r }` is χ_{X_{n,r}} over k[ε]; `Simple { shift }` is χ of
/// Σ^shift k over k[ε]; `Residue { prime, shift }` is χ of Σ^shift k(p).
/// The Σ-orbit representative of each label has n = 0 or shift = 0.
#[derive(Clone, Debug, PartialEq)]
pub enum Label<F: Field> {
    Object { n: i32, r: usize },
    Simple { shift: i32 },
    Residue { prime: PrimeDatum<F>, shift: i32 },
}

impl<F: Field> Label<F> {
    fn sort_key(&self) -> (u8, usize, i32, String) {
        match self {
            Label::Simple { shift } => (0, 0, *shift, String::new()),
            Label::Object { n, r } => (1, *r, *n, String::new()),
            Label::Residue { prime, shift } => (2, 0, *shift, format!("{prime:?}")),
        }
    }

    /// The orbit representative and the offset s with
    /// χ_self(Σ^k C) = χ_base(Σ^{k−s} C).
    pub fn base(&self) -> (Label<F>, i32) {
        match self {
            Label::Object { n, r } => (Label::Object { n: 0, r: *r }, -n),
            Label::Simple { shift } => (Label::Simple { shift: 0 }, *shift),
            Label::Residue { prime, shift } => (Label::Residue { prime: prime.clone(), shift: 0 }, *shift),
        }
    }

    /// The label of χ_self ∘ Σ^m.
    pub fn precompose_shift(&self, m: i32) -> Label<F> {
        match self {
            Label::Object { n, r } => Label::Object { n: n + m, r: *r },
            Label::Simple { shift } => Label::Simple { shift: shift - m },
            Label::Residue { prime, shift } => Label::Residue { prime: prime.clone(), shift: shift - m },
        }
    }

    pub fn name(&self, field: &F) -> String {
        match self {
            Label::Object { n, r } => format!("X({n},{r})"),
            Label::Simple { shift: 0 } => "k".to_string(),
            Label::Simple { shift } => format!("k[{shift}]"),
            Label::Residue { prime, shift: 0 } => format!("k{}", prime.label(field)),
            Label::Residue { prime, shift } => format!("k{}[{shift}]", prime.label(field)),
        }
    }
}

impl<F: Field> Eq for Label<F> {}

impl<F: Field> PartialOrd for Label<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Ord for Label<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

struct ObjectOracle<F: Field> {
    x: PerfectComplex<F>,
    end: EndAlgebra<F>,
    data: SemisimpleData<F>,
}

struct ModuleOracle<F: Field> {
    module: FinModule<F>,
    basis: Vec<Matrix<F>>,
    data: SemisimpleData<F>,
}

enum Backing<F: Field> {
    Zero,
    Object(Box<ObjectOracle<F>>),
    Module(Box<ModuleOracle<F>>),
    Residue(ResidueField<F>),
    Combo { terms: Vec<(Label<F>, usize)>, bases: Vec<(Label<F>, CohFunction<F>)> },
}

/// A cohomological function with a memo of evaluated profiles.
pub struct CohFunction<F: Field> {
    alg: CoeffAlgebra<F>,
    backing: Backing<F>,
    cache: Mutex<HashMap<PerfectComplex<F>, Arc<Profile>>>,
}

impl<F: Field> fmt::Debug for CohFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.backing {
            Backing::Zero => "zero".to_string(),
            Backing::Object(o) => format!("object of total rank {}", o.x.total_rank()),
            Backing::Module(m) => format!("module of dimension {}", m.module.dim()),
            Backing::Residue(_) => "residue field".to_string(),
            Backing::Combo { terms, .. } => format!("combination of {} labels", terms.len()),
        };
        write!(f, "CohFunction({kind} over {})", self.alg.name())
    }
}

fn length_of<F: Field>(data: &SemisimpleData<F>, m: &AlgebraModule<F>) -> Result<usize, CohfunError> {
    Ok(data.length(m)?)
}

fn analyzed<F: Field>(e: &FinDimAlgebra<F>) -> Result<SemisimpleData<F>, CohfunError> {
    Ok(analyze(e)?)
}

impl<F: Field> CohFunction<F> {
    fn with_backing(alg: &CoeffAlgebra<F>, backing: Backing<F>) -> Self {
        CohFunction { alg: alg.clone(), backing, cache: Mutex::new(HashMap::new()) }
    }

    /// C ↦ length over End(X) of Hom(C, X) in the homotopy category.
    pub fn of_complex(x: &PerfectComplex<F>) -> Result<Self, CohfunError> {
        x.validate()?;
        if x.is_zero() {
            return Ok(Self::with_backing(x.algebra(), Backing::Zero));
        }
        let end = EndAlgebra::new(x)?;
        let data = analyzed(end.algebra())?;
        Ok(Self::with_backing(x.algebra(), Backing::Object(Box::new(ObjectOracle { x: x.clone(), end, data }))))
    }

    /// C ↦ length over End_A(M) of H^0 Hom_A(C, M).
    pub fn of_module(m: &FinModule<F>) -> Result<Self, CohfunError> {
        if m.dim() == 0 {
            return Ok(Self::with_backing(m.algebra(), Backing::Zero));
        }
        let (e, basis) = m.end_algebra()?;
        let data = analyzed(&e)?;
        Ok(Self::with_backing(m.algebra(), Backing::Module(Box::new(ModuleOracle { module: m.clone(), basis, data }))))
    }

    /// C ↦ dim_{k(p)} Hom(C, k(p)), computed by base change to the residue field.
    pub fn residue(alg: &CoeffAlgebra<F>, p: &PrimeDatum<F>) -> Result<Self, CohfunError> {
        Ok(Self::with_backing(alg, Backing::Residue(residue_field(alg, p)?)))
    }

    /// The function of a single label.
    pub fn of_label(alg: &CoeffAlgebra<F>, label: &Label<F>) -> Result<Self, CohfunError> {
        match label {
            Label::Object { n: 0, r } => {
                if !alg.is_dual_numbers() {
                    return Err(CohfunError::Unsupported("object labels are defined over k[e]".into()));
                }
                Self::of_complex(&PerfectComplex::string(alg, 0, *r))
            }
            Label::Simple { shift: 0 } => {
                if !alg.is_dual_numbers() {
                    return Err(CohfunError::Unsupported("the simple label is defined over k[e]".into()));
                }
                Self::residue(alg, &PrimeDatum::DualMaximal)
            }
            Label::Residue { prime, shift: 0 } => Self::residue(alg, prime),
            _ => Self::combo(alg, &[(label.clone(), 1)]),
        }
    }

    /// Σ m_i χ_{label_i}; zero multiplicities are dropped and repeated labels merged.
    pub fn combo(alg: &CoeffAlgebra<F>, terms: &[(Label<F>, usize)]) -> Result<Self, CohfunError> {
        let mut merged: BTreeMap<Label<F>, usize> = BTreeMap::new();
        for (l, m) in terms {
            if *m > 0 {
                *merged.entry(l.clone()).or_insert(0) += m;
            }
        }
        let mut bases: Vec<(Label<F>, CohFunction<F>)> = Vec::new();
        for l in merged.keys() {
            let (b, _) = l.base();
            if !bases.iter().any(|(x, _)| *x == b) {
                let f = Self::of_label(alg, &b)?;
                bases.push((b, f));
            }
        }
        Ok(Self::with_backing(alg, Backing::Combo { terms: merged.into_iter().collect(), bases }))
    }

    pub fn algebra(&self) -> &CoeffAlgebra<F> {
        &self.alg
    }

    /// The labelled terms of a combination, if this is one.
    pub fn terms(&self) -> Option<&[(Label<F>, usize)]> {
        match &self.backing {
            Backing::Combo { terms, .. } => Some(terms),
            _ => None,
        }
    }

    /// Whether End/rad of the representing object or module is the base field,
    /// so that lengths are k-dimensions.
    pub fn length_is_dimension(&self) -> Option<bool> {
        match &self.backing {
            Backing::Object(o) => Some(o.data.top_dim() == 1),
            Backing::Module(m) => Some(m.data.top_dim() == 1),
            _ => None,
        }
    }

    pub fn eval(&self, c: &PerfectComplex<F>) -> Result<usize, CohfunError> {
        Ok(self.profile(c)?.get(&0).copied().unwrap_or(0))
    }

    /// χ(Σ^k C).
    pub fn eval_shift(&self, c: &PerfectComplex<F>, k: i32) -> Result<usize, CohfunError> {
        Ok(self.profile(c)?.get(&k).copied().unwrap_or(0))
    }

    /// All values χ(Σ^k C), k ∈ Z.
    pub fn profile(&self, c: &PerfectComplex<F>) -> Result<Arc<Profile>, CohfunError> {
        if *c.algebra() != self.alg {
            return Err(CohfunError::AlgebraMismatch);
        }
        if let Some(p) = self.cache.lock().unwrap().get(c) {
            return Ok(p.clone());
        }
        let p = Arc::new(self.compute(c)?);
        self.cache.lock().unwrap().insert(c.clone(), p.clone());
        Ok(p)
    }

    fn compute(&self, c: &PerfectComplex<F>) -> Result<Profile, CohfunError> {
        let mut out = Profile::new();
        match &self.backing {
            Backing::Zero => {}
            Backing::Object(o) => {
                let hc = HomComplex::new(c, &o.x)?;
                let fast = o.data.top_dim() == 1;
                for &n in hc.dims().keys() {
                    let dim = hc.cohomology_dim(n);
                    if dim == 0 {
                        continue;
                    }
                    let len = if fast { dim } else { length_of(&o.data, &o.end.module_on(&hc, n))? };
                    if len > 0 {
                        out.insert(-n, len);
                    }
                }
            }
            Backing::Module(m) => {
                for (n, h) in m.module.hom_cohomology(c, &m.basis) {
                    let len = length_of(&m.data, &h)?;
                    if len > 0 {
                        out.insert(-n, len);
                    }
                }
            }
            Backing::Residue(res) => {
                let ranks = fibre_ranks(&self.alg, res, c);
                let rk = |i: i32| ranks.get(&i).copied().unwrap_or(0);
                for (&j, &r) in c.ranks() {
                    let h = r - rk(j) - rk(j - 1);
                    if h > 0 {
                        out.insert(j, h);
                    }
                }
            }
            Backing::Combo { terms, bases } => {
                for (l, mult) in terms {
                    let (b, s) = l.base();
                    let f = &bases.iter().find(|(x, _)| *x == b).expect("base present").1;
                    for (&k, &v) in f.profile(c)?.iter() {
                        *out.entry(k + s).or_insert(0) += mult * v;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Ranks of the differentials of C ⊗ k(p).
fn fibre_ranks<F: Field>(alg: &CoeffAlgebra<F>, res: &ResidueField<F>, c: &PerfectComplex<F>) -> BTreeMap<i32, usize> {
    let f = alg.field();
    c.diffs()
        .iter()
        .map(|(&i, d)| {
            let rank = match res {
                ResidueField::Base { point, .. } => d.to_poly_matrix(alg).eval(point).rank(),
                ResidueField::Extension(ext) => extension_rank(f, ext, &d.to_poly_matrix(alg)),
                ResidueField::FractionField => poly_matrix_rank(&d.to_poly_matrix(alg)),
            };
            (i, rank)
        })
        .collect()
}

fn extension_rank<F: Field>(f: &F, ext: &ExtensionField, m: &crate::exactlin::PolyMatrix<F>) -> usize {
    let embed = |c: &F::Elem| -> Vec<u64> {
        let coords = f.to_prime_coords(c).expect("prime field coefficients");
        ext.from_prime_coords(&coords[..1]).expect("embedding into the residue field")
    };
    let mut t = vec![0u64; ext.degree()];
    t[1] = 1;
    let t = ext.from_prime_coords(&t).expect("generator");
    m.eval_in(ext, embed, &t).rank()
}

/// χ_X with X a complex.
pub fn chi_of_complex<F: Field>(x: &PerfectComplex<F>) -> Result<CohFunction<F>, CohfunError> {
    CohFunction::of_complex(x)
}

/// χ of a finite-dimensional module in degree 0.
pub fn chi_of_module<F: Field>(m: &FinModule<F>) -> Result<CohFunction<F>, CohfunError> {
    CohFunction::of_module(m)
}

pub fn eval<F: Field>(chi: &CohFunction<F>, c: &PerfectComplex<F>) -> Result<usize, CohfunError> {
    chi.eval(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::perfcx::{cone, ChainMap};

    fn dual() -> CoeffAlgebra<PrimeField> {
        CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
    }

    #[test]
    fn object_examples() {
        let a = dual();
        let x00 = PerfectComplex::string(&a, 0, 0);
        let chi = chi_of_complex(&x00).unwrap();
        assert_eq!(chi.eval(&x00).unwrap(), 2);
        assert_eq!(chi.eval(&PerfectComplex::string(&a, 0, 1)).unwrap(), 1);
        assert_eq!(chi.eval(&PerfectComplex::zero(&a)).unwrap(), 0);
        assert_eq!(chi.length_is_dimension(), Some(true));
    }

    #[test]
    fn simple_module_examples() {
        let a = dual();
        let k = FinModule::residue(&a, &PrimeDatum::DualMaximal).unwrap();
        let chi = chi_of_module(&k).unwrap();
        let lab = CohFunction::of_label(&a, &Label::Simple { shift: 0 }).unwrap();
        for r in 0..5 {
            let x = PerfectComplex::string(&a, 0, r);
            assert_eq!(chi.eval(&x).unwrap(), 1);
            let p = chi.profile(&x).unwrap();
            assert_eq!(p.len(), r + 1);
            assert_eq!(p.keys().copied().collect::<Vec<_>>(), (0..=r as i32).collect::<Vec<_>>());
            assert_eq!(*p, *lab.profile(&x).unwrap());
        }
    }

    #[test]
    fn residue_over_polynomials() {
        let f = PrimeField::new(5).unwrap();
        let a = CoeffAlgebra::poly_ring(&f);
        let x = PrimeDatum::principal(&f, vec![0, 1]).unwrap();
        let free = PerfectComplex::stalk(&a, 0, 1);
        let chi = CohFunction::residue(&a, &x).unwrap();
        assert_eq!(chi.eval(&free).unwrap(), 1);
        let mulx = PerfectComplex::two_term(&a, -1, crate::coeffalg::AlgMatrix::from_fn(&a, 1, 1, |_, _| a.gen()));
        assert_eq!(chi.eval(&mulx).unwrap(), 1);
        let generic = CohFunction::residue(&a, &PrimeDatum::Zero).unwrap();
        assert_eq!(generic.eval(&mulx).unwrap(), 0);
        // module and base-change computations agree, also for a degree-2 prime
        for g in [vec![0, 1], vec![2, 0, 1]] {
            let p = PrimeDatum::principal(&f, g).unwrap();
            let by_module = chi_of_module(&FinModule::residue(&a, &p).unwrap()).unwrap();
            let by_fibre = CohFunction::residue(&a, &p).unwrap();
            let d = crate::coeffalg::AlgMatrix::from_fn(&a, 1, 1, |_, _| match &p {
                PrimeDatum::Principal(g) => a.mul(g, &vec![1, 1]),
                _ => unreachable!(),
            });
            for c in [free.clone(), mulx.clone(), PerfectComplex::two_term(&a, 0, d)] {
                assert_eq!(*by_module.profile(&c).unwrap(), *by_fibre.profile(&c).unwrap());
            }
        }
    }

    #[test]
    fn combos_and_additivity() {
        let a = dual();
        let x00 = PerfectComplex::string(&a, 0, 0);
        let chi = CohFunction::combo(&a, &[(Label::Object { n: 0, r: 0 }, 1), (Label::Simple { shift: 0 }, 1)]).unwrap();
        assert_eq!(chi.eval(&x00).unwrap(), 3);
        let c = PerfectComplex::string(&a, -1, 2);
        assert_eq!(chi.eval(&c.direct_sum(&c)).unwrap(), 2 * chi.eval(&c).unwrap());
        // shifted object labels agree with the objects themselves
        let lab = CohFunction::combo(&a, &[(Label::Object { n: 2, r: 1 }, 1)]).unwrap();
        let obj = chi_of_complex(&PerfectComplex::string(&a, 2, 1)).unwrap();
        for probe in [x00.clone(), c.clone(), PerfectComplex::string(&a, 1, 3)] {
            assert_eq!(*lab.profile(&probe).unwrap(), *obj.profile(&probe).unwrap());
        }
    }

    #[test]
    fn endolength_of_doubled_object() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 1);
        let xx = x.direct_sum(&x);
        let single = chi_of_complex(&x).unwrap();
        let double = chi_of_complex(&xx).unwrap();
        assert_eq!(double.length_is_dimension(), Some(false));
        for probe in [PerfectComplex::string(&a, 0, 0), PerfectComplex::string(&a, 1, 2), x.clone()] {
            assert_eq!(*single.profile(&probe).unwrap(), *double.profile(&probe).unwrap());
        }
        let y = x.direct_sum(&PerfectComplex::string(&a, 0, 0));
        let both = chi_of_complex(&y).unwrap();
        let sum = CohFunction::combo(&a, &[(Label::Object { n: 0, r: 1 }, 1), (Label::Object { n: 0, r: 0 }, 1)]).unwrap();
        let probe = cone(&ChainMap::scalar(&PerfectComplex::string(&a, 0, 2), &a.gen())).unwrap().c;
        assert_eq!(*both.profile(&probe).unwrap(), *sum.profile(&probe).unwrap());
    }

    #[test]
    fn field_coefficients_use_true_length() {
        // F_5[x]/(x^2+2) = F_25: End of the free stalk is F_25, lengths halve.
        let f = PrimeField::new(5).unwrap();
        let a = CoeffAlgebra::poly_quotient(&f, vec![2, 0, 1]).unwrap();
        let x = PerfectComplex::stalk(&a, 0, 1);
        let chi = chi_of_complex(&x).unwrap();
        assert_eq!(chi.length_is_dimension(), Some(false));
        assert_eq!(chi.eval(&x.direct_sum(&x)).unwrap(), 2);
        assert_eq!(crate::perfcx::derived_hom_dim(&x, &x, 0).unwrap(), 2);
    }
}
