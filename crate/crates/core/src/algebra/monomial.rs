//! Monomials as exponent vectors, degree enumeration and multinomials.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::AlgebraError;

/// A monomial `x_1^{e_1} ... x_n^{e_n}`.
///
/// The derived ordering is lexicographic on the exponent vector with `x_1`
/// most significant, so `x_1^d` is the largest monomial of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u64>,
}

impl Monomial {
    pub fn new(exps: Vec<u64>) -> Self {
        assert!(!exps.is_empty(), "a monomial needs at least one variable");
        Monomial { exps }
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial::new(vec![0; n])
    }

    /// `x_i^e` (zero-based `i`).
    pub fn pure_power(n: usize, i: usize, e: u64) -> Self {
        let mut exps = vec![0; n];
        exps[i] = e;
        Monomial::new(exps)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u64 {
        self.exps[i]
    }

    /// Total degree. Summing `n` values below `2^64` cannot overflow `u128`.
    pub fn degree(&self) -> u128 {
        self.exps.iter().map(|&e| e as u128).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial::new)
    }

    /// If the monomial is `x_i^e` with `e > 0`, returns `i`.
    pub fn pure_power_variable(&self) -> Option<usize> {
        let mut nonzero = self.exps.iter().enumerate().filter(|(_, &e)| e > 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Renders with a custom variable prefix, e.g. `X1^2*X3`.
    pub fn display_with<'a>(&'a self, prefix: &'a str) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, prefix }
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    prefix: &'a str,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}{}", self.prefix, i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("x").fmt(f)
    }
}

/// All monomials of degree `d` in `n` variables, lexicographically
/// descending (`x_1^d` first, `x_n^d` last).
pub fn monomials_of_degree(n: usize, d: u64) -> Vec<Monomial> {
    assert!(n >= 1, "need at least one variable");
    let mut out = Vec::new();
    let mut current = vec![0u64; n];
    fill_descending(&mut current, 0, d, &mut out);
    out
}

fn fill_descending(current: &mut Vec<u64>, pos: usize, remaining: u64, out: &mut Vec<Monomial>) {
    let n = current.len();
    if pos == n - 1 {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_descending(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// Number of monomials of degree `d` in `n` variables, `binomial(d+n-1, n-1)`.
pub fn count_of_degree(n: usize, d: u64) -> BigUint {
    binomial(d + n as u64 - 1, n as u64 - 1)
}

pub fn binomial(top: u64, bottom: u64) -> BigUint {
    if bottom > top {
        return BigUint::from(0u32);
    }
    let bottom = bottom.min(top - bottom);
    let mut acc = BigUint::one();
    for k in 0..bottom {
        acc *= top - k;
        acc /= k + 1;
    }
    acc
}

/// `d! / (alpha_1! ... alpha_n!)`.
pub fn multinomial(d: u64, alpha: &[u64]) -> Result<BigUint, AlgebraError> {
    let sum: u128 = alpha.iter().map(|&a| a as u128).sum();
    if sum != d as u128 {
        return Err(AlgebraError::DegreeMismatch {
            expected: d as u128,
            found: sum,
        });
    }
    let mut acc = BigUint::one();
    let mut top = 0u64;
    for &a in alpha {
        top += a;
        acc *= binomial(top, a);
    }
    Ok(acc)
}

/// `prod alpha_i!` as used by the differentiation action.
pub fn factorial_product(alpha: &[u64]) -> BigUint {
    let mut acc = BigUint::one();
    for &a in alpha {
        for k in 2..=a {
            acc *= k;
        }
    }
    acc
}
