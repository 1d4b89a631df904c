//! Sparse polynomials over the rationals in the coefficient symbols
//! `a_1..a_n, b_1..b_n`.
//!
//! Exponent vectors have length `2n`: the `a` part followed by the `b` part.
//! Terms are kept in graded lexicographic order with
//! `a_1 < ... < a_n < b_1 < ... < b_n`, and printed in ascending order, so
//! the constant term comes first and `a2*a3 - b2*b3` prints in that order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::{coefficient_prefix, format_rational};
use crate::error::AlgebraError;

/// Name of the `k`-th coefficient symbol among `2n` (zero-based).
pub fn symbol_name(n: usize, k: usize) -> String {
    if k < n {
        format!("a{}", k + 1)
    } else {
        format!("b{}", k - n + 1)
    }
}

/// Exponent vector in the `2n` coefficient symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymExp(Vec<u64>);

impl SymExp {
    pub fn new(exps: Vec<u64>) -> Self {
        assert!(exps.len() % 2 == 0, "symbol exponent vectors have even length");
        SymExp(exps)
    }

    pub fn zero(n: usize) -> Self {
        SymExp(vec![0; 2 * n])
    }

    pub fn from_parts(a: &[u64], b: &[u64]) -> Self {
        assert_eq!(a.len(), b.len());
        SymExp(a.iter().chain(b).copied().collect())
    }

    /// Number of generator pairs `n`.
    pub fn pairs(&self) -> usize {
        self.0.len() / 2
    }

    pub fn exps(&self) -> &[u64] {
        &self.0
    }

    pub fn a_part(&self) -> &[u64] {
        &self.0[..self.pairs()]
    }

    pub fn b_part(&self) -> &[u64] {
        &self.0[self.pairs()..]
    }

    pub fn degree(&self) -> u128 {
        self.0.iter().map(|&e| e as u128).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn add(&self, other: &SymExp) -> SymExp {
        SymExp(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    fn checked_sub(&self, other: &SymExp) -> Option<SymExp> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(x, y)| x.checked_sub(*y))
            .collect::<Option<Vec<_>>>()
            .map(SymExp)
    }

    fn render(&self, out: &mut String) {
        let n = self.pairs();
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&symbol_name(n, k));
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
}

impl Ord for SymExp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for SymExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparsePoly {
    terms: BTreeMap<SymExp, BigRational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        SparsePoly::term(SymExp::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        SparsePoly::constant(n, BigRational::one())
    }

    pub fn term(exp: SymExp, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        SparsePoly { terms }
    }

    /// The symbol `a_{i+1}`.
    pub fn a(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[i] = 1;
        SparsePoly::term(SymExp(e), BigRational::one())
    }

    /// The symbol `b_{i+1}`.
    pub fn b(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[n + i] = 1;
        SparsePoly::term(SymExp(e), BigRational::one())
    }

    /// `prod a_i^{r_i}` as a polynomial.
    pub fn a_power(r: &[u64]) -> Self {
        SparsePoly::term(SymExp::from_parts(r, &vec![0; r.len()]), BigRational::one())
    }

    /// `prod b_i^{r_i}` as a polynomial.
    pub fn b_power(r: &[u64]) -> Self {
        SparsePoly::term(SymExp::from_parts(&vec![0; r.len()], r), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` if the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Single-term polynomials: their exponent and coefficient.
    pub fn as_term(&self) -> Option<(&SymExp, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SymExp, &BigRational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&SymExp, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u128> {
        self.leading_term().map(|(e, _)| e.degree())
    }

    fn add_term(&mut self, exp: SymExp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigRational) -> SparsePoly {
        if k.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> SparsePoly {
        let n = match self.terms.keys().next() {
            Some(e) => e.pairs(),
            // the zero polynomial carries no symbol count; 0^0 is reported as 0 too
            None => return SparsePoly::zero(),
        };
        let mut acc = SparsePoly::one(n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes values for some symbols; `None` keeps the symbol.
    pub fn substitute(&self, a: &[Option<BigRational>], b: &[Option<BigRational>]) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (e, c) in &self.terms {
            let n = e.pairs();
            let mut coeff = c.clone();
            let mut exps = e.0.clone();
            for (k, exp) in exps.iter_mut().enumerate() {
                if *exp == 0 {
                    continue;
                }
                let value = if k < n { &a[k] } else { &b[k - n] };
                if let Some(v) = value {
                    coeff *= pow_rational(v, *exp);
                    *exp = 0;
                }
            }
            out.add_term(SymExp(exps), coeff);
        }
        out
    }

    /// Full evaluation at a point.
    pub fn evaluate(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let n = e.pairs();
            let mut t = c.clone();
            for (k, &exp) in e.0.iter().enumerate() {
                if exp > 0 {
                    let v = if k < n { &a[k] } else { &b[k - n] };
                    t *= pow_rational(v, exp);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    ///
    /// If `divisor` divides `self`, the leading term of the divisor divides
    /// the leading term of every intermediate dividend, so the first failure
    /// of that test proves non-divisibility.
    pub fn exact_div(&self, divisor: &SparsePoly) -> Result<Option<SparsePoly>, AlgebraError> {
        let (lead_exp, lead_coeff) = divisor.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quotient = SparsePoly::zero();
        while let Some((e, c)) = rem.leading_term() {
            let Some(qe) = e.checked_sub(lead_exp) else {
                return Ok(None);
            };
            let qc = c / lead_coeff;
            let step = SparsePoly::term(qe.clone(), qc.clone());
            rem = &rem - &(&step * divisor);
            quotient.add_term(qe, qc);
        }
        Ok(Some(quotient))
    }

    /// Symbols (indices into the `2n` list) that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut seen: Vec<usize> = Vec::new();
        for e in self.terms.keys() {
            for (k, &x) in e.0.iter().enumerate() {
                if x > 0 && !seen.contains(&k) {
                    seen.push(k);
                }
            }
        }
        seen.sort_unstable();
        seen
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> SparsePoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&(BigRational::one() / c)),
            None => SparsePoly::zero(),
        }
    }
}

pub(crate) fn pow_rational(v: &BigRational, e: u64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= v;
    }
    acc
}

/// True iff `q = p*h` for a polynomial `h`.
pub fn poly_divides(p: &SparsePoly, q: &SparsePoly) -> Result<bool, AlgebraError> {
    Ok(q.exact_div(p)?.is_some())
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let negative = c < &BigRational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if e.is_zero() {
                out.push_str(&format_rational(&magnitude));
            } else {
                out.push_str(&coefficient_prefix(&magnitude));
                e.render(&mut out);
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use proptest::prelude::*;

    fn binom(n: usize, i: usize, j: usize) -> SparsePoly {
        // a_i a_j - b_i b_j
        &(&SparsePoly::a(n, i) * &SparsePoly::a(n, j)) - &(&SparsePoly::b(n, i) * &SparsePoly::b(n, j))
    }

    #[test]
    fn prints_in_ascending_graded_order() {
        let p = binom(3, 1, 2);
        assert_eq!(p.to_string(), "a2*a3 - b2*b3");
        assert_eq!(p.pow(2).to_string(), "a2^2*a3^2 - 2*a2*a3*b2*b3 + b2^2*b3^2");
        let q = &SparsePoly::one(5) - &SparsePoly::b_power(&[1, 1, 1, 1, 1]);
        assert_eq!(q.to_string(), "1 - b1*b2*b3*b4*b5");
        assert_eq!(SparsePoly::zero().to_string(), "0");
        assert_eq!((-SparsePoly::a(2, 0)).to_string(), "-a1");
    }

    #[test]
    fn divisibility_examples() {
        let p = binom(3, 1, 2);
        assert!(poly_divides(&p, &p.pow(2)).unwrap());
        let a1 = SparsePoly::a(2, 0);
        assert!(!poly_divides(&a1, &binom(2, 0, 1)).unwrap());
        let q = &SparsePoly::a_power(&[2, 2]) - &SparsePoly::b_power(&[2, 2]);
        assert!(poly_divides(&binom(2, 0, 1), &q).unwrap());
        let quotient = q.exact_div(&binom(2, 0, 1)).unwrap().unwrap();
        assert_eq!(quotient.to_string(), "a1*a2 + b1*b2");
        assert_eq!(
            poly_divides(&SparsePoly::zero(), &q),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn substitution_and_evaluation() {
        let p = binom(3, 1, 2);
        let s = p.substitute(&[None, Some(int(1)), Some(int(1))], &[None, None, None]);
        assert_eq!(s.to_string(), "1 - b2*b3");
        let v = p.evaluate(&[int(1), int(1), int(1)], &[int(1), int(1), int(2)]);
        assert_eq!(v, int(-1));
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec((prop::collection::vec(0u64..3, 4), -5i64..6), 0..5).prop_map(|ts| {
            let mut p = SparsePoly::zero();
            for (e, c) in ts {
                p = &p + &SparsePoly::term(SymExp::new(e), int(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
        }

        #[test]
        fn product_is_divisible(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!p.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.exact_div(&p).unwrap(), Some(q));
        }
    }
}
