//! Hessians of a dual generator and rank checks for multiplication by
//! powers of a linear form.
//!
//! For a basis `g_1..g_m` of `A_k = (R / Ann F)_k` the entry `(i, j)` of the
//! `k`-th Hessian is `(g_i g_j) ∘ F`, a form of degree `D - 2k`. Pairing
//! every entry with `ℓ^{D-2k}` gives the matrix of `·ℓ^{D-2k}: A_k -> A_{D-k}`
//! in the dual bases, so its rank is the rank of that map.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::monomial::factorial_product;
use crate::algebra::{monomials_of_degree, Convention, Monomial, Poly};
use crate::error::LefschetzError;
use crate::linalg::{dense_rank, Echelon};

#[derive(Clone, Debug, PartialEq)]
pub struct HessianMatrix {
    k: u64,
    socle_degree: u64,
    convention: Convention,
    basis: Vec<Monomial>,
    entries: Vec<Vec<Poly<BigRational>>>,
}

fn socle_of(big_f: &Poly<BigRational>) -> u64 {
    big_f.homogeneous_degree().unwrap_or(0) as u64
}

fn one() -> BigRational {
    BigRational::one()
}

/// Coefficient vector of `g ∘ F`.
fn action_row(g: &Monomial, big_f: &Poly<BigRational>, convention: Convention, cols: &[Monomial]) -> Vec<(usize, BigRational)> {
    let image = Poly::term(g.clone(), one()).act_on(big_f, convention);
    image
        .terms()
        .map(|(m, c)| (cols.binary_search_by(|x| m.cmp(x)).expect("image has the complementary degree"), c.clone()))
        .collect()
}

fn check_basis(big_f: &Poly<BigRational>, k: u64, basis: &[Monomial], convention: Convention) -> Result<(), LefschetzError> {
    let d = socle_of(big_f);
    if 2 * k > d {
        return Err(LefschetzError::OrderTooLarge { k, socle: d });
    }
    if let Some(bad) = basis.iter().find(|g| g.degree() != u128::from(k) || g.nvars() != big_f.nvars()) {
        return Err(LefschetzError::BasisDegree(bad.to_string()));
    }
    let cols = monomials_of_degree(big_f.nvars(), d - k);
    let mut e = Echelon::new();
    let independent = basis.iter().all(|g| e.insert(action_row(g, big_f, convention, &cols)));
    if !independent {
        return Err(LefschetzError::DependentBasis {
            k,
            given: basis.len(),
            rank: e.rank(),
        });
    }
    Ok(())
}

/// `Hess^k(F)` with respect to the given monomials, which must be
/// independent in `A_k`.
pub fn hessian(
    big_f: &Poly<BigRational>,
    k: u64,
    basis: &[Monomial],
    convention: Convention,
) -> Result<HessianMatrix, LefschetzError> {
    check_basis(big_f, k, basis, convention)?;
    let entries = basis
        .iter()
        .map(|gi| {
            basis
                .iter()
                .map(|gj| Poly::term(gi.mul(gj), one()).act_on(big_f, convention))
                .collect()
        })
        .collect();
    Ok(HessianMatrix {
        k,
        socle_degree: socle_of(big_f),
        convention,
        basis: basis.to_vec(),
        entries,
    })
}

/// A basis of `A_k` chosen greedily among degree-`k` monomials, squarefree
/// ones first.
pub fn default_basis(big_f: &Poly<BigRational>, k: u64, convention: Convention) -> Vec<Monomial> {
    let d = socle_of(big_f);
    if k > d || big_f.is_zero() {
        return Vec::new();
    }
    let (mut candidates, rest): (Vec<_>, Vec<_>) =
        monomials_of_degree(big_f.nvars(), k).into_iter().partition(Monomial::is_squarefree);
    candidates.extend(rest);
    let cols = monomials_of_degree(big_f.nvars(), d - k);
    let mut e = Echelon::new();
    candidates
        .into_iter()
        .filter(|g| e.insert(action_row(g, big_f, convention, &cols)))
        .collect()
}

/// `ℓ^e ∘ G` for a form `G` of degree `e`, with `ℓ = Σ c_i x_i`.
fn pair_with_power(g: &Poly<BigRational>, ell: &[BigRational], e: u64, convention: Convention) -> BigRational {
    let e_fact = BigRational::from_integer(factorial_product(&[e]).into());
    let mut acc = BigRational::zero();
    for (beta, c) in g.terms() {
        let mut t = c * &e_fact;
        for (v, &x) in ell.iter().zip(beta.exponents()) {
            for _ in 0..x {
                t *= v;
            }
        }
        if convention == Convention::Contraction {
            let beta_fact: BigUint = factorial_product(beta.exponents());
            t /= BigRational::from_integer(beta_fact.into());
        }
        acc += t;
    }
    acc
}

impl HessianMatrix {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly<BigRational> {
        &self.entries[i][j]
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// The matrix of `·ℓ^{D-2k}: A_k -> A_{D-k}`.
    pub fn at(&self, ell: &[BigRational]) -> Result<Vec<Vec<BigRational>>, LefschetzError> {
        let n = self.basis.first().map_or(ell.len(), Monomial::nvars);
        if ell.len() != n {
            return Err(LefschetzError::FormLength {
                expected: n,
                found: ell.len(),
            });
        }
        let e = self.socle_degree - 2 * self.k;
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().map(|g| pair_with_power(g, ell, e, self.convention)).collect())
            .collect())
    }

    pub fn rank_at(&self, ell: &[BigRational]) -> Result<usize, LefschetzError> {
        Ok(dense_rank(&self.at(ell)?))
    }
}

/// Rank of `Hess^k(F)` on the default basis, paired with `ℓ^{D-2k}`.
pub fn lefschetz_rank(
    big_f: &Poly<BigRational>,
    k: u64,
    ell: &[BigRational],
    convention: Convention,
) -> Result<usize, LefschetzError> {
    hessian(big_f, k, &default_basis(big_f, k, convention), convention)?.rank_at(ell)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    MaximalRank,
    /// No trial reached full rank; probabilistic.
    ProbablyFails,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::MaximalRank => "maximal-rank",
            Verdict::ProbablyFails => "probably-fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderReport {
    pub k: u64,
    pub basis_size: usize,
    /// Best rank over the trials.
    pub rank: usize,
    pub verdict: Verdict,
    /// The form achieving `rank`.
    pub ell: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlpReport {
    pub socle_degree: u64,
    pub orders: Vec<OrderReport>,
}

impl SlpReport {
    pub fn holds(&self) -> bool {
        self.orders.iter().all(|o| o.verdict == Verdict::MaximalRank)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "D": self.socle_degree,
            "slp": self.holds(),
            "orders": self.orders.iter().map(|o| json!({
                "k": o.k,
                "basis_size": o.basis_size,
                "rank": o.rank,
                "verdict": o.verdict.name(),
                "ell": o.ell.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Integer linear form with entries in `[-100, 100]`.
pub fn random_form<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| BigRational::from_integer(rng.gen_range(-100i64..=100).into())).collect()
}

/// Checks `Hess^k` at `trials` random forms for every `0 <= k <= D/2`.
pub fn slp_check(big_f: &Poly<BigRational>, trials: usize, seed: u64, convention: Convention) -> SlpReport {
    let d = socle_of(big_f);
    let n = big_f.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orders = (0..=d / 2)
        .map(|k| {
            let basis = default_basis(big_f, k, convention);
            let h = hessian(big_f, k, &basis, convention).expect("default basis is independent");
            let mut best = (0, vec![BigRational::zero(); n]);
            for _ in 0..trials.max(1) {
                let ell = random_form(&mut rng, n);
                let r = h.rank_at(&ell).expect("form has n entries");
                if r > best.0 || best.1.iter().all(Zero::is_zero) {
                    best = (r, ell);
                }
                if best.0 == basis.len() {
                    break;
                }
            }
            OrderReport {
                k,
                basis_size: basis.len(),
                rank: best.0,
                verdict: if best.0 == basis.len() { Verdict::MaximalRank } else { Verdict::ProbablyFails },
                ell: best.1,
            }
        })
        .collect();
    SlpReport { socle_degree: d, orders }
}
