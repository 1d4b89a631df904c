mod common;

use binomial_ci::algebra::poly_divides;
use binomial_ci::graph::{ReductionGraph, VertexClass};
use binomial_ci::oracle::is_complete_intersection;
use binomial_ci::resultant::{build_c_matrix, det_numeric_oracle, det_structural, resultant_radical, TStatus};
use binomial_ci::BinomialFamily;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shape(seed: u64, max_n: usize, max_degree: u64) -> (BinomialFamily, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 + (seed as usize % (max_n - 1));
    (common::random_shape(&mut rng, n, max_degree), rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn structural_determinant_matches_elimination(seed in any::<u64>()) {
        let (fam, mut rng) = shape(seed, 3, 3);
        let det = det_structural(&fam);
        for _ in 0..20 {
            let (a, b) = common::random_values(&mut rng, fam.n(), 50);
            let oracle = det_numeric_oracle(&common::with_values(&fam, a.clone(), b.clone())).unwrap();
            prop_assert_eq!(oracle, det.evaluate(&a, &b));
        }
    }

    #[test]
    fn matrix_layout_invariants(seed in any::<u64>()) {
        let (fam, _) = shape(seed, 4, 3);
        let c = build_c_matrix(&fam);
        prop_assert!(c.check_invariants(&fam).is_ok());
        let total: usize = (0..fam.n()).map(|i| c.partition_class(i).len()).sum();
        prop_assert_eq!(total, c.size());
    }

    #[test]
    fn a_divides_iff_off_cycle_edge(seed in any::<u64>()) {
        let (fam, mut rng) = shape(seed, 3, 3);
        let det = det_structural(&fam);
        let g = ReductionGraph::build(&fam, fam.resultant_degree());
        for i in 0..fam.n() {
            let off_cycle = (0..g.len()).any(|v| g.label(v) == Some(i) && g.class(v) != VertexClass::Cyclic);
            prop_assert_eq!(det.a_divides(i), off_cycle);
            let (mut a, b) = common::random_values(&mut rng, fam.n(), 50);
            a[i] = BigRational::zero();
            let m = c_numeric_det(&fam, &a, &b);
            prop_assert_eq!(m.is_zero(), off_cycle || det.evaluate(&a, &b).is_zero());
            prop_assert_eq!(m, det.evaluate(&a, &b));
        }
    }

    #[test]
    fn cycle_radical_divides_determinant(seed in any::<u64>()) {
        let (fam, _) = shape(seed, 4, 3);
        let r = resultant_radical(&fam, None);
        let det = det_structural(&fam).expand();
        let cycles = r.factors().iter().fold(binomial_ci::SparsePoly::one(fam.n()), |acc, f| &acc * &f.poly);
        prop_assert_eq!(poly_divides(&cycles, &det), Ok(true));
    }

    #[test]
    fn radical_agrees_without_pure_power_tails(seed in any::<u64>()) {
        let (fam, _) = shape(seed, 4, 3);
        prop_assume!(!fam.has_pure_power_tail());
        let r = resultant_radical(&fam, None);
        prop_assert!(r.all_certain());
        prop_assert_eq!(r.product(), det_structural(&fam).radical());
    }

    #[test]
    fn radical_zero_set_matches_oracle(seed in any::<u64>()) {
        let (fam, mut rng) = shape(seed, 3, 2);
        let r = resultant_radical(&fam, None);
        prop_assume!(r.status().iter().all(|&s| s == TStatus::Certain));
        let product = r.product();
        for _ in 0..3 {
            let (a, b) = common::random_values(&mut rng, fam.n(), 30);
            let point = common::with_values(&fam, a.clone(), b.clone());
            prop_assert_eq!(!product.evaluate(&a, &b).is_zero(), is_complete_intersection(&point).unwrap());
        }
    }
}

fn c_numeric_det(fam: &BinomialFamily, a: &[BigRational], b: &[BigRational]) -> BigRational {
    binomial_ci::linalg::determinant(&build_c_matrix(fam).numeric(a, b))
}

#[test]
fn engineered_cycle_points_are_not_complete_intersections() {
    let fam = binomial_ci::fixtures::binary_loop();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let (a, mut b) = common::random_values(&mut rng, 2, 1000);
        b[1] = &a[0] * &a[1] / &b[0];
        assert!(!is_complete_intersection(&common::with_values(&fam, a, b)).unwrap());
    }
}

#[test]
fn probe_is_reproducible_and_labeled() {
    let fam = binomial_ci::fixtures::ternary_chain();
    let opts = binomial_ci::resultant::ProbeOptions { trials: 5, seed: 3 };
    let a = resultant_radical(&fam, Some(opts));
    assert_eq!(a, resultant_radical(&fam, Some(opts)));
    assert_eq!(a.t(), &[0, 1, 1]);
    assert_eq!(a.to_string(), "a2*a3*(a1^4*a2^2*a3 - b1^4*b2^2*b3)");
    let unprobed = resultant_radical(&fam, None);
    assert_eq!(unprobed.status()[0], TStatus::Bounded);
}
