//! Polynomials in `x_1..x_n` (or the dual variables `X_1..X_n`) over a
//! coefficient ring, and the contraction/differentiation action.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::{factorial_product, Monomial};
use super::rational::{coefficient_prefix, format_rational};
use super::sparse::SparsePoly;

/// Coefficient rings used for `x`/`X` polynomials.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero_value() -> Self;
    fn is_zero_value(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, k: &BigRational) -> Self;
}

impl Coefficient for BigRational {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, k: &BigRational) -> Self {
        self * k
    }
}

impl Coefficient for SparsePoly {
    fn zero_value() -> Self {
        SparsePoly::zero()
    }
    fn is_zero_value(&self) -> bool {
        SparsePoly::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, k: &BigRational) -> Self {
        SparsePoly::scale(self, k)
    }
}

/// How `R = K[x]` acts on `S = K[X]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `x_i^a ∘ X_i^b = X_i^{b-a}` (zero when `a > b`).
    #[default]
    Contraction,
    /// `x_i = ∂/∂X_i`.
    Differentiation,
}

impl Convention {
    /// The scalar `k` with `x^beta ∘ X^alpha = k X^{alpha-beta}`, assuming `beta | alpha`.
    pub fn factor(self, alpha: &Monomial, gamma: &Monomial) -> BigUint {
        match self {
            Convention::Contraction => BigUint::one(),
            Convention::Differentiation => {
                factorial_product(alpha.exponents()) / factorial_product(gamma.exponents())
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Contraction => "contraction",
            Convention::Differentiation => "differentiation",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "contraction" => Ok(Convention::Contraction),
            "differentiation" => Ok(Convention::Differentiation),
            other => Err(format!("unknown convention {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Poly::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms, lexicographically descending.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero_value() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add_ref(&c);
                if sum.is_zero_value() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), c1.mul_ref(c));
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c.scale(k))))
    }

    pub fn map_coeffs<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Coefficient, E>(
        &self,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<Poly<D>, E> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// The common degree of all terms, `None` for zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u128> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// `self ∘ target`, extended bilinearly from the monomial rule.
    pub fn act_on(&self, target: &Poly<C>, convention: Convention) -> Poly<C> {
        let mut out = Poly::zero(self.nvars);
        for (beta, cf) in &self.terms {
            for (alpha, ct) in &target.terms {
                let Some(gamma) = alpha.checked_div(beta) else {
                    continue;
                };
                let k = convention.factor(alpha, &gamma);
                let c = cf.mul_ref(ct).scale(&BigRational::from_integer(k.into()));
                out.add_term(gamma, c);
            }
        }
        out
    }
}

impl Poly<BigRational> {
    /// Value at `X = point`.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn to_symbolic(&self, n: usize) -> Poly<SparsePoly> {
        self.map_coeffs(|c| SparsePoly::constant(n, c.clone()))
    }

    pub fn display_with<'a>(&'a self, prefix: &'a str) -> impl fmt::Display + 'a {
        RationalPolyDisplay { p: self, prefix }
    }
}

struct RationalPolyDisplay<'a> {
    p: &'a Poly<BigRational>,
    prefix: &'a str,
}

impl fmt::Display for RationalPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.p.terms().enumerate() {
            let negative = c < &BigRational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&mag))?;
            } else {
                write!(f, "{}{}", coefficient_prefix(&mag), m.display_with(self.prefix))?;
            }
        }
        Ok(())
    }
}

impl Poly<SparsePoly> {
    pub fn display_with<'a>(&'a self, prefix: &'a str) -> impl fmt::Display + 'a {
        SymbolicPolyDisplay { p: self, prefix }
    }

    /// Substitutes values for some coefficient symbols.
    pub fn substitute(&self, a: &[Option<BigRational>], b: &[Option<BigRational>]) -> Self {
        self.map_coeffs(|c| c.substitute(a, b))
    }

    /// `Some` when every coefficient is a constant.
    pub fn to_numeric(&self) -> Option<Poly<BigRational>> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.constant_value()?);
        }
        Some(out)
    }
}

struct SymbolicPolyDisplay<'a> {
    p: &'a Poly<SparsePoly>,
    prefix: &'a str,
}

impl fmt::Display for SymbolicPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.p.terms().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let coeff = if c.len() > 1 { format!("({c})") } else { c.to_string() };
            if m.is_one() {
                f.write_str(&coeff)?;
            } else if c.is_one() {
                write!(f, "{}", m.display_with(self.prefix))?;
            } else {
                write!(f, "{coeff}*{}", m.display_with(self.prefix))?;
            }
        }
        Ok(())
    }
}
