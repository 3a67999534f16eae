use proptest::prelude::*;

use cohlen_core::coeffalg::{CoeffAlgebra, PrimeDatum};
use cohlen_core::cohfun::{check_cohomological, five_term_sum, CohFunction};
use cohlen_core::exactlin::{Matrix, PrimeField};
use cohlen_core::perfcx::{barcode_by_ranks, complex_from_json, complex_to_json, PerfectComplex};
use cohlen_core::random::{case_rng, random_cone_triangle, random_dual_complex, scramble, DualShape};

const SMALL: DualShape = DualShape { lo: -2, hi: 2, max_rank: 3 };

fn dual() -> CoeffAlgebra<PrimeField> {
    CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
}

fn complex(seed: u64) -> PerfectComplex<PrimeField> {
    random_dual_complex(&dual(), SMALL, &mut case_rng(seed, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(seed in any::<u64>(), rows in 0usize..7, cols in 0usize..7) {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::random(&f, rows, cols, &mut case_rng(seed, 0));
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn barcode_is_additive(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (complex(a), complex(b));
        let sum = barcode_by_ranks(&x.direct_sum(&y)).unwrap();
        prop_assert_eq!(sum, barcode_by_ranks(&x).unwrap().merge(&barcode_by_ranks(&y).unwrap()));
    }

    #[test]
    fn barcode_follows_shifts(seed in any::<u64>(), m in -3i32..=3) {
        let x = complex(seed);
        prop_assert_eq!(barcode_by_ranks(&x.shift(m)).unwrap(), barcode_by_ranks(&x).unwrap().shift(m));
    }

    #[test]
    fn barcode_ignores_basis_change(seed in any::<u64>()) {
        let x = complex(seed);
        let y = scramble(&x, &mut case_rng(seed, 1));
        prop_assert_eq!(barcode_by_ranks(&x).unwrap(), barcode_by_ranks(&y).unwrap());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let x = complex(seed);
        let back: PerfectComplex<PrimeField> = complex_from_json(&complex_to_json(&x)).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn chi_is_additive_and_shift_equivariant(a in any::<u64>(), b in any::<u64>(), k in -3i32..=3) {
        let alg = dual();
        let chi = CohFunction::of_complex(&PerfectComplex::string(&alg, 0, 1)).unwrap();
        let (x, y) = (complex(a), complex(b));
        let s = chi.eval(&x.direct_sum(&y)).unwrap();
        prop_assert_eq!(s, chi.eval(&x).unwrap() + chi.eval(&y).unwrap());
        prop_assert_eq!(chi.eval_shift(&x, k).unwrap(), chi.eval(&x.shift(k)).unwrap());
    }

    #[test]
    fn residue_function_is_cohomological(seed in any::<u64>()) {
        let alg = dual();
        let chi = CohFunction::residue(&alg, &PrimeDatum::DualMaximal).unwrap();
        let t = random_cone_triangle(&alg, SMALL, &mut case_rng(seed, 0));
        prop_assert!(check_cohomological(&chi, &t, 8).unwrap().is_none());
    }

    #[test]
    fn five_term_sum_vanishes(seed in any::<u64>(), n in -2i32..=2, r in 0usize..=3) {
        let alg = dual();
        prop_assert_eq!(five_term_sum(&alg, n, r, &complex(seed)).unwrap(), 0);
    }
}
