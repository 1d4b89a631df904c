#![allow(dead_code)]

use binomial_ci::algebra::rational::random_nonzero;
use binomial_ci::algebra::{monomials_of_degree, Monomial};
use binomial_ci::oracle::is_complete_intersection;
use binomial_ci::{BinomialFamily, CoeffAssignment};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random symbolic family with `n` generators and degrees in `1..=max_degree`.
pub fn random_shape<R: Rng>(rng: &mut R, n: usize, max_degree: u64) -> BinomialFamily {
    let degrees: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_degree)).collect();
    let tails = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let lead = Monomial::pure_power(n, i, d);
            let choices: Vec<Monomial> = monomials_of_degree(n, d).into_iter().filter(|m| *m != lead).collect();
            choices.choose(rng).expect("n >= 2 leaves a tail").clone()
        })
        .collect();
    BinomialFamily::symbolic(degrees, tails).expect("random shape is valid")
}

pub fn random_values<R: Rng>(rng: &mut R, n: usize, bound: i64) -> (Vec<BigRational>, Vec<BigRational>) {
    let a = (0..n).map(|_| random_nonzero(rng, bound)).collect();
    let b = (0..n).map(|_| random_nonzero(rng, bound)).collect();
    (a, b)
}

pub fn with_values(fam: &BinomialFamily, a: Vec<BigRational>, b: Vec<BigRational>) -> BinomialFamily {
    fam.specialize(&CoeffAssignment::numeric(a, b).expect("lengths match")).expect("a is nonzero")
}

/// Draws random numeric families until `count` of them are complete intersections.
pub fn ci_corpus<R: Rng>(rng: &mut R, count: usize, max_n: usize, max_degree: u64) -> Vec<BinomialFamily> {
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=max_n);
        let shape = random_shape(rng, n, max_degree);
        let (a, b) = random_values(rng, n, 20);
        let fam = with_values(&shape, a, b);
        if is_complete_intersection(&fam).unwrap() {
            out.push(fam);
        }
    }
    out
}
