//! Laurent monomials in the coefficient symbols with a rational scalar.

use std::fmt;
use std::ops::Mul;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::{coefficient_prefix, format_rational};
use super::sparse::{pow_rational, symbol_name, SparsePoly, SymExp};
use crate::error::AlgebraError;

/// `scalar * prod a_i^{a_exps[i]} * prod b_i^{b_exps[i]}`, exponents may be negative.
///
/// A zero scalar always carries all-zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffMonomial {
    scalar: BigRational,
    a_exps: Vec<i64>,
    b_exps: Vec<i64>,
}

impl CoeffMonomial {
    pub fn new(scalar: BigRational, a_exps: Vec<i64>, b_exps: Vec<i64>) -> Self {
        assert_eq!(a_exps.len(), b_exps.len());
        let n = a_exps.len();
        if scalar.is_zero() {
            return CoeffMonomial::zero(n);
        }
        CoeffMonomial { scalar, a_exps, b_exps }
    }

    pub fn one(n: usize) -> Self {
        CoeffMonomial::scalar(n, BigRational::one())
    }

    pub fn zero(n: usize) -> Self {
        CoeffMonomial {
            scalar: BigRational::zero(),
            a_exps: vec![0; n],
            b_exps: vec![0; n],
        }
    }

    pub fn scalar(n: usize, c: BigRational) -> Self {
        CoeffMonomial::new(c, vec![0; n], vec![0; n])
    }

    /// `a_{i+1}`.
    pub fn a(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        CoeffMonomial::new(BigRational::one(), a, vec![0; n])
    }

    /// `b_{i+1}`.
    pub fn b(n: usize, i: usize) -> Self {
        let mut b = vec![0; n];
        b[i] = 1;
        CoeffMonomial::new(BigRational::one(), vec![0; n], b)
    }

    /// `b^r / a^r`.
    pub fn b_over_a(r: &[u64]) -> Self {
        CoeffMonomial::new(
            BigRational::one(),
            r.iter().map(|&x| -(x as i64)).collect(),
            r.iter().map(|&x| x as i64).collect(),
        )
    }

    /// `a^p * b^q` for nonnegative vectors.
    pub fn a_b_power(p: &[u64], q: &[u64]) -> Self {
        CoeffMonomial::new(
            BigRational::one(),
            p.iter().map(|&x| x as i64).collect(),
            q.iter().map(|&x| x as i64).collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.a_exps.len()
    }

    pub fn scalar_part(&self) -> &BigRational {
        &self.scalar
    }

    pub fn a_exps(&self) -> &[i64] {
        &self.a_exps
    }

    pub fn b_exps(&self) -> &[i64] {
        &self.b_exps
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        CoeffMonomial::new(&self.scalar * k, self.a_exps.clone(), self.b_exps.clone())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(CoeffMonomial::new(
            BigRational::one() / &self.scalar,
            self.a_exps.iter().map(|e| -e).collect(),
            self.b_exps.iter().map(|e| -e).collect(),
        ))
    }

    pub fn is_polynomial(&self) -> bool {
        self.a_exps.iter().chain(&self.b_exps).all(|&e| e >= 0)
    }

    pub fn to_sparse(&self) -> Result<SparsePoly, AlgebraError> {
        if self.is_zero() {
            return Ok(SparsePoly::zero());
        }
        if !self.is_polynomial() {
            return Err(AlgebraError::NotPolynomial);
        }
        let exps: Vec<u64> = self.a_exps.iter().chain(&self.b_exps).map(|&e| e as u64).collect();
        Ok(SparsePoly::term(SymExp::new(exps), self.scalar.clone()))
    }

    /// Substitutes values for some symbols. Symbols with a value of zero and
    /// a negative exponent make the substitution undefined.
    pub fn substitute(
        &self,
        a: &[Option<BigRational>],
        b: &[Option<BigRational>],
    ) -> Result<CoeffMonomial, AlgebraError> {
        let n = self.nvars();
        let mut scalar = self.scalar.clone();
        let mut a_exps = self.a_exps.clone();
        let mut b_exps = self.b_exps.clone();
        for (k, (exps, values)) in [(&mut a_exps, a), (&mut b_exps, b)].into_iter().enumerate() {
            for (i, e) in exps.iter_mut().enumerate() {
                let Some(v) = &values[i] else { continue };
                if *e == 0 {
                    continue;
                }
                if *e > 0 {
                    scalar *= pow_rational(v, *e as u64);
                } else if v.is_zero() {
                    return Err(AlgebraError::ZeroDenominator(symbol_name(n, k * n + i)));
                } else {
                    scalar /= pow_rational(v, e.unsigned_abs());
                }
                *e = 0;
            }
        }
        Ok(CoeffMonomial::new(scalar, a_exps, b_exps))
    }

    /// Full evaluation at a point.
    pub fn evaluate(&self, a: &[BigRational], b: &[BigRational]) -> Result<BigRational, AlgebraError> {
        let some = |v: &[BigRational]| v.iter().cloned().map(Some).collect::<Vec<_>>();
        let c = self.substitute(&some(a), &some(b))?;
        Ok(c.scalar)
    }
}

impl Mul for &CoeffMonomial {
    type Output = CoeffMonomial;
    fn mul(self, rhs: &CoeffMonomial) -> CoeffMonomial {
        CoeffMonomial::new(
            &self.scalar * &rhs.scalar,
            self.a_exps.iter().zip(&rhs.a_exps).map(|(x, y)| x + y).collect(),
            self.b_exps.iter().zip(&rhs.b_exps).map(|(x, y)| x + y).collect(),
        )
    }
}

impl Mul for CoeffMonomial {
    type Output = CoeffMonomial;
    fn mul(self, rhs: CoeffMonomial) -> CoeffMonomial {
        &self * &rhs
    }
}

fn render_factors(n: usize, a: &[i64], b: &[i64], sign: i64) -> Vec<String> {
    let mut out = Vec::new();
    for (k, &e) in a.iter().chain(b).enumerate() {
        let e = e * sign;
        if e <= 0 {
            continue;
        }
        let name = symbol_name(n, k);
        out.push(if e == 1 { name } else { format!("{name}^{e}") });
    }
    out
}

/// Renders as `b1^2*b2/(a1^2*a2)`, `3*a1*b2`, `-b1/a1` or a bare scalar.
impl fmt::Display for CoeffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars();
        let num = render_factors(n, &self.a_exps, &self.b_exps, 1);
        let den = render_factors(n, &self.a_exps, &self.b_exps, -1);
        let mut out = String::new();
        if num.is_empty() {
            out.push_str(&format_rational(&self.scalar));
        } else {
            out.push_str(&coefficient_prefix(&self.scalar));
            out.push_str(&num.join("*"));
        }
        match den.len() {
            0 => {}
            1 if !den[0].contains('^') => {
                out.push('/');
                out.push_str(&den[0]);
            }
            _ => {
                out.push_str("/(");
                out.push_str(&den.join("*"));
                out.push(')');
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

    #[test]
    fn renders_path_coefficient() {
        let c = CoeffMonomial::b_over_a(&[2, 1, 0]);
        assert_eq!(c.to_string(), "b1^2*b2/(a1^2*a2)");
        assert_eq!(CoeffMonomial::b_over_a(&[1, 0]).to_string(), "b1/a1");
        assert_eq!(CoeffMonomial::one(2).to_string(), "1");
        assert_eq!(CoeffMonomial::a(2, 1).scale(&int(-3)).to_string(), "-3*a2");
        assert_eq!(CoeffMonomial::zero(2).to_string(), "0");
    }

    #[test]
    fn zero_is_canonical() {
        let c = CoeffMonomial::new(int(0), vec![1, -2], vec![0, 3]);
        assert_eq!(c, CoeffMonomial::zero(2));
        let d = &CoeffMonomial::b(2, 0) * &CoeffMonomial::zero(2);
        assert_eq!(d, CoeffMonomial::zero(2));
    }

    #[test]
    fn substitution() {
        let c = CoeffMonomial::b_over_a(&[1, 1]);
        let s = c.substitute(&[Some(int(2)), None], &[None, Some(int(0))]).unwrap();
        assert!(s.is_zero());
        let err = c.substitute(&[Some(int(0)), None], &[None, None]);
        assert!(matches!(err, Err(AlgebraError::ZeroDenominator(name)) if name == "a1"));
        assert!(c.to_sparse().is_err());
        assert_eq!(
            CoeffMonomial::a_b_power(&[1, 0], &[0, 2]).to_sparse().unwrap().to_string(),
            "a1*b2^2"
        );
    }

    fn arb() -> impl Strategy<Value = CoeffMonomial> {
        (
            -9i64..10,
            prop::collection::vec(-3i64..4, 3),
            prop::collection::vec(-3i64..4, 3),
        )
            .prop_map(|(s, a, b)| CoeffMonomial::new(int(s), a, b))
    }

    proptest! {
        #[test]
        fn multiplication_is_commutative_and_additive(x in arb(), y in arb()) {
            let xy = &x * &y;
            prop_assert_eq!(&xy, &(&y * &x));
            if !xy.is_zero() {
                for i in 0..3 {
                    prop_assert_eq!(xy.a_exps()[i], x.a_exps()[i] + y.a_exps()[i]);
                    prop_assert_eq!(xy.b_exps()[i], x.b_exps()[i] + y.b_exps()[i]);
                }
            }
        }
    }
}
