//! Integer univariate polynomials and cyclotomic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::sparse::SparsePoly;

/// Dense integer polynomial, coefficients from degree 0 upwards, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^e - 1`.
    pub fn x_pow_minus_one(e: usize) -> Self {
        let mut c = vec![BigInt::zero(); e + 1];
        c[0] = -BigInt::one();
        c[e] = BigInt::one();
        IntPoly::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntPoly::new(out)
    }

    /// Exact quotient by a divisor with leading coefficient ±1; `None` on remainder.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return rem.iter().all(|c| c.is_zero()).then(|| IntPoly::new(vec![]));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd];
            let (q, r) = c.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| IntPoly::new(quot))
    }

    /// `sum c_k A^k B^{deg-k}` for polynomials `A`, `B` in the coefficient ring.
    pub fn homogenize(&self, a: &SparsePoly, b: &SparsePoly, n: usize) -> SparsePoly {
        let Some(deg) = self.degree() else {
            return SparsePoly::zero();
        };
        let mut acc = SparsePoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = &pow_or_one(a, k as u64, n) * &pow_or_one(b, (deg - k) as u64, n);
            acc = &acc + &t.scale(&BigRational::from_integer(c.clone()));
        }
        acc
    }
}

fn pow_or_one(p: &SparsePoly, k: u64, n: usize) -> SparsePoly {
    if k == 0 {
        SparsePoly::one(n)
    } else {
        p.pow(k)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

pub fn divisors(e: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=e).take_while(|d| d * d <= e).filter(|d| e % d == 0).collect();
    let mut big: Vec<u64> = out.iter().map(|d| e / d).filter(|q| !out.contains(q)).collect();
    big.reverse();
    out.extend(big);
    out
}

/// The `e`-th cyclotomic polynomial, by dividing `x^e - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic(e: u64) -> IntPoly {
    assert!(e >= 1, "cyclotomic index must be positive");
    let mut acc = IntPoly::x_pow_minus_one(e as usize);
    for d in divisors(e) {
        if d == e {
            continue;
        }
        acc = acc
            .exact_div(&cyclotomic(d))
            .expect("cyclotomic factors divide x^e - 1");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(6).to_string(), "x^2 - x + 1");
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
    }

    #[test]
    fn products_over_divisors_recover_x_pow_minus_one() {
        for e in 1..=30u64 {
            let prod = divisors(e)
                .into_iter()
                .fold(IntPoly::from_i64(&[1]), |acc, d| acc.mul(&cyclotomic(d)));
            assert_eq!(prod, IntPoly::x_pow_minus_one(e as usize), "e = {e}");
        }
    }

    #[test]
    fn homogenized_second_cyclotomic() {
        let a = SparsePoly::a_power(&[1, 1]);
        let b = SparsePoly::b_power(&[1, 1]);
        assert_eq!(cyclotomic(1).homogenize(&a, &b, 2).to_string(), "a1*a2 - b1*b2");
        assert_eq!(cyclotomic(2).homogenize(&a, &b, 2).to_string(), "a1*a2 + b1*b2");
    }
}
