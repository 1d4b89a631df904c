//! Families of binomials `f_i = a_i x_i^{d_i} - b_i m_i` on normal form.
//!
//! Generator indices are zero-based in the API and one-based in every
//! rendered form (`f1`, `a1`, `x1`).

mod json;
mod parse;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::rational::format_rational;
use crate::algebra::{CoeffMonomial, Monomial, Poly, SparsePoly};
use crate::error::{AlgebraError, FamilyError};

pub use json::FamilyJson;
pub use parse::{parse_assignment, parse_monomial, parse_polynomial};

/// Values for `a_1..a_n, b_1..b_n`; `None` leaves a symbol free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffAssignment {
    a: Vec<Option<BigRational>>,
    b: Vec<Option<BigRational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffMode {
    Symbolic,
    Numeric,
    Mixed,
}

impl CoeffAssignment {
    pub fn symbolic(n: usize) -> Self {
        CoeffAssignment {
            a: vec![None; n],
            b: vec![None; n],
        }
    }

    pub fn new(a: Vec<Option<BigRational>>, b: Vec<Option<BigRational>>) -> Result<Self, FamilyError> {
        if a.len() != b.len() {
            return Err(FamilyError::CoefficientLength {
                expected: a.len(),
                found: b.len(),
            });
        }
        if let Some(i) = a.iter().position(|v| v.as_ref().is_some_and(Zero::is_zero)) {
            return Err(FamilyError::ZeroLeadingCoefficient { generator: i + 1 });
        }
        Ok(CoeffAssignment { a, b })
    }

    pub fn numeric(a: Vec<BigRational>, b: Vec<BigRational>) -> Result<Self, FamilyError> {
        CoeffAssignment::new(a.into_iter().map(Some).collect(), b.into_iter().map(Some).collect())
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn a(&self) -> &[Option<BigRational>] {
        &self.a
    }

    pub fn b(&self) -> &[Option<BigRational>] {
        &self.b
    }

    pub fn with_a(mut self, i: usize, v: BigRational) -> Self {
        self.a[i] = Some(v);
        self
    }

    pub fn with_b(mut self, i: usize, v: BigRational) -> Self {
        self.b[i] = Some(v);
        self
    }

    pub fn mode(&self) -> CoeffMode {
        let assigned = self.a.iter().chain(&self.b).filter(|v| v.is_some()).count();
        if assigned == 0 {
            CoeffMode::Symbolic
        } else if assigned == 2 * self.len() {
            CoeffMode::Numeric
        } else {
            CoeffMode::Mixed
        }
    }

    /// Values of `other` override those of `self`.
    pub fn overridden_by(&self, other: &CoeffAssignment) -> Result<CoeffAssignment, FamilyError> {
        if other.len() != self.len() {
            return Err(FamilyError::CoefficientLength {
                expected: self.len(),
                found: other.len(),
            });
        }
        let pick = |x: &[Option<BigRational>], y: &[Option<BigRational>]| {
            x.iter().zip(y).map(|(u, v)| v.clone().or_else(|| u.clone())).collect()
        };
        CoeffAssignment::new(pick(&self.a, &other.a), pick(&self.b, &other.b))
    }

    /// Both value vectors when every symbol is assigned.
    pub fn values(&self) -> Option<(Vec<BigRational>, Vec<BigRational>)> {
        let a = self.a.iter().cloned().collect::<Option<Vec<_>>>()?;
        let b = self.b.iter().cloned().collect::<Option<Vec<_>>>()?;
        Some((a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialFamily {
    degrees: Vec<u64>,
    tails: Vec<Monomial>,
    coeffs: CoeffAssignment,
}

impl BinomialFamily {
    pub fn new(degrees: Vec<u64>, tails: Vec<Monomial>, coeffs: CoeffAssignment) -> Result<Self, FamilyError> {
        let n = degrees.len();
        if n == 0 {
            return Err(FamilyError::Empty);
        }
        if tails.len() != n {
            return Err(FamilyError::MissingGenerator {
                generator: tails.len().min(n) + 1,
            });
        }
        if coeffs.len() != n {
            return Err(FamilyError::CoefficientLength {
                expected: n,
                found: coeffs.len(),
            });
        }
        for (i, (&d, m)) in degrees.iter().zip(&tails).enumerate() {
            if d == 0 {
                return Err(FamilyError::ZeroDegree { generator: i + 1 });
            }
            if m.nvars() != n {
                return Err(FamilyError::VariableOutOfRange {
                    variable: m.nvars(),
                    n,
                });
            }
            if m.degree() != d as u128 {
                return Err(FamilyError::TailDegree {
                    generator: i + 1,
                    expected: d,
                    found: m.degree(),
                });
            }
            if *m == Monomial::pure_power(n, i, d) {
                return Err(FamilyError::TailIsLeadingPower {
                    generator: i + 1,
                    degree: d,
                });
            }
        }
        // re-validates the a_i != 0 invariant
        let coeffs = CoeffAssignment::new(coeffs.a, coeffs.b)?;
        Ok(BinomialFamily { degrees, tails, coeffs })
    }

    pub fn symbolic(degrees: Vec<u64>, tails: Vec<Monomial>) -> Result<Self, FamilyError> {
        let n = degrees.len();
        BinomialFamily::new(degrees, tails, CoeffAssignment::symbolic(n))
    }

    /// Convenience constructor from raw exponent vectors.
    pub fn from_exponents(degrees: &[u64], tails: &[&[u64]]) -> Result<Self, FamilyError> {
        BinomialFamily::symbolic(
            degrees.to_vec(),
            tails.iter().map(|t| Monomial::new(t.to_vec())).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn tail(&self, i: usize) -> &Monomial {
        &self.tails[i]
    }

    pub fn tails(&self) -> &[Monomial] {
        &self.tails
    }

    pub fn coefficients(&self) -> &CoeffAssignment {
        &self.coeffs
    }

    pub fn mode(&self) -> CoeffMode {
        self.coeffs.mode()
    }

    pub fn is_numeric(&self) -> bool {
        self.mode() == CoeffMode::Numeric
    }

    /// The same tails with every coefficient symbolic.
    pub fn symbolic_shape(&self) -> BinomialFamily {
        BinomialFamily {
            degrees: self.degrees.clone(),
            tails: self.tails.clone(),
            coeffs: CoeffAssignment::symbolic(self.n()),
        }
    }

    /// Socle degree `sum (d_i - 1)`.
    pub fn socle_degree(&self) -> u64 {
        self.degrees.iter().map(|d| d - 1).sum()
    }

    /// `sum (d_i - 1) + 1`, the degree of the resultant matrix.
    pub fn resultant_degree(&self) -> u64 {
        self.socle_degree() + 1
    }

    pub fn leading_power(&self, i: usize) -> Monomial {
        Monomial::pure_power(self.n(), i, self.degrees[i])
    }

    /// Membership in `M_{d_1..d_k}`: every exponent `i < k` is below `d_i`.
    pub fn in_basis_prefix(&self, m: &Monomial, k: usize) -> bool {
        (0..k).all(|i| m.exponent(i) < self.degrees[i])
    }

    pub fn in_basis(&self, m: &Monomial) -> bool {
        self.in_basis_prefix(m, self.n())
    }

    /// The reduction edge out of `m`: least `i` with `x_i^{d_i} | m`, and `m m_i / x_i^{d_i}`.
    pub fn successor(&self, m: &Monomial) -> Option<(usize, Monomial)> {
        let i = (0..self.n()).find(|&i| m.exponent(i) >= self.degrees[i])?;
        let mut exps = m.exponents().to_vec();
        exps[i] -= self.degrees[i];
        let next = Monomial::new(exps).mul(&self.tails[i]);
        Some((i, next))
    }

    /// Whether no tail is a pure power of `x_i`.
    pub fn no_tail_is_power_of(&self, i: usize) -> bool {
        self.tails.iter().all(|m| m.pure_power_variable() != Some(i))
    }

    pub fn has_pure_power_tail(&self) -> bool {
        self.tails.iter().any(|m| m.pure_power_variable().is_some())
    }

    pub fn specialize(&self, assign: &CoeffAssignment) -> Result<BinomialFamily, FamilyError> {
        let coeffs = self.coeffs.overridden_by(assign)?;
        Ok(BinomialFamily {
            degrees: self.degrees.clone(),
            tails: self.tails.clone(),
            coeffs,
        })
    }

    /// `a_i` as a polynomial: its value, or the free symbol.
    pub fn a_value(&self, i: usize) -> SparsePoly {
        match &self.coeffs.a[i] {
            Some(v) => SparsePoly::constant(self.n(), v.clone()),
            None => SparsePoly::a(self.n(), i),
        }
    }

    pub fn b_value(&self, i: usize) -> SparsePoly {
        match &self.coeffs.b[i] {
            Some(v) => SparsePoly::constant(self.n(), v.clone()),
            None => SparsePoly::b(self.n(), i),
        }
    }

    /// `f_i` with this family's coefficient assignment applied.
    pub fn generator(&self, i: usize) -> Poly<SparsePoly> {
        Poly::from_terms(
            self.n(),
            [
                (self.leading_power(i), self.a_value(i)),
                (self.tails[i].clone(), -self.b_value(i)),
            ],
        )
    }

    /// `f_i` with symbolic coefficients regardless of the assignment.
    pub fn symbolic_generator(&self, i: usize) -> Poly<SparsePoly> {
        self.symbolic_shape().generator(i)
    }

    pub fn numeric_generator(&self, i: usize) -> Option<Poly<BigRational>> {
        let a = self.coeffs.a[i].clone()?;
        let b = self.coeffs.b[i].clone()?;
        Some(Poly::from_terms(
            self.n(),
            [(self.leading_power(i), a), (self.tails[i].clone(), -b)],
        ))
    }

    pub fn substitute(&self, p: &SparsePoly) -> SparsePoly {
        p.substitute(&self.coeffs.a, &self.coeffs.b)
    }

    pub fn substitute_coeff(&self, c: &CoeffMonomial) -> Result<CoeffMonomial, AlgebraError> {
        c.substitute(&self.coeffs.a, &self.coeffs.b)
    }

    pub fn from_json(text: &str) -> Result<Self, FamilyError> {
        let raw: FamilyJson = serde_json::from_str(text).map_err(|e| FamilyError::Json(e.to_string()))?;
        raw.into_family()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&FamilyJson::from_family(self)).expect("family JSON serializes")
    }

    /// Reads either the JSON format (leading `{`) or the text grammar.
    pub fn from_source(text: &str) -> Result<Self, FamilyError> {
        if text.trim_start().starts_with('{') {
            BinomialFamily::from_json(text)
        } else {
            text.parse()
        }
    }
}

impl std::str::FromStr for BinomialFamily {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        parse::parse_family(s)
    }
}

fn render_coefficient(value: &Option<BigRational>, symbol: &str, i: usize) -> String {
    match value {
        None => format!("{symbol}{}*", i + 1),
        Some(v) if v.is_one() => String::new(),
        Some(v) => format!("{}*", format_rational(v)),
    }
}

/// One generator per line, `f1 = a1*x1^2 - b1*x1*x3`.
impl fmt::Display for BinomialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(
                f,
                "f{} = {}{} - {}{}",
                i + 1,
                render_coefficient(&self.coeffs.a[i], "a", i),
                self.leading_power(i),
                render_coefficient(&self.coeffs.b[i], "b", i),
                self.tails[i],
            )?;
        }
        Ok(())
    }
}
