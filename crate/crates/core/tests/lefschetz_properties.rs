mod common;

use binomial_ci::algebra::rational::int;
use binomial_ci::algebra::{Convention, Monomial, Poly};
use binomial_ci::dual::dual_generator;
use binomial_ci::lefschetz::{default_basis, hessian, random_form, slp_check};
use binomial_ci::CoeffAssignment;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hessians_are_symmetric_with_square_diagonal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = common::ci_corpus(&mut rng, 1, 3, 3).remove(0);
        let conv = if seed % 2 == 0 { Convention::Contraction } else { Convention::Differentiation };
        let f = dual_generator(&fam, conv).to_numeric().unwrap();
        let d = fam.socle_degree();
        for k in 0..=d / 2 {
            let basis = default_basis(&f, k, conv);
            let h = hessian(&f, k, &basis, conv).unwrap();
            prop_assert!(h.is_symmetric());
            for (i, g) in basis.iter().enumerate() {
                let square = Poly::term(g.mul(g), BigRational::from_integer(1.into())).act_on(&f, conv);
                prop_assert_eq!(h.entry(i, i), &square);
            }
            let dual_size = default_basis(&f, d - k, conv).len();
            let rank = h.rank_at(&random_form(&mut rng, fam.n())).unwrap();
            prop_assert!(rank <= basis.len().min(dual_size));
        }
    }

    #[test]
    fn monomial_complete_intersections_have_slp(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=4);
        let exps: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let f = Poly::term(Monomial::new(exps), int(1));
        for conv in [Convention::Contraction, Convention::Differentiation] {
            prop_assert!(slp_check(&f, 5, seed, conv).holds());
        }
    }

    #[test]
    fn zero_tail_duals_have_full_rank_hessians(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=4);
        let shape = common::random_shape(&mut rng, n, 3);
        let zero_b = CoeffAssignment::new(vec![Some(int(1)); n], vec![Some(BigRational::zero()); n]).unwrap();
        let fam = shape.specialize(&zero_b).unwrap();
        let f = dual_generator(&fam, Convention::Contraction).to_numeric().unwrap();
        for k in 0..=fam.socle_degree() / 2 {
            let basis: Vec<Monomial> = binomial_ci::algebra::monomials_of_degree(n, k)
                .into_iter()
                .filter(|m| fam.in_basis(m))
                .collect();
            let h = hessian(&f, k, &basis, Convention::Contraction).unwrap();
            let ell = vec![int(1); n];
            prop_assert_eq!(h.rank_at(&ell).unwrap(), basis.len());
        }
    }
}

#[test]
fn rank_over_trials_never_decreases() {
    let f = binomial_ci::fixtures::non_ci_form();
    let few = slp_check(&f, 1, 4, Convention::Differentiation);
    let many = slp_check(&f, 6, 4, Convention::Differentiation);
    for (x, y) in few.orders.iter().zip(&many.orders) {
        assert!(x.rank <= y.rank);
    }
}
