//! Brute-force checks by exact linear algebra on Macaulay and
//! catalecticant matrices.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use serde_json::Value;

use crate::algebra::{monomials_of_degree, Convention, Monomial, Poly};
use crate::error::OracleError;
use crate::family::BinomialFamily;
use crate::linalg::{rank, Echelon};

/// Values `h_0, h_1, ...` of a Hilbert function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunction(pub Vec<usize>);

impl HilbertFunction {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn to_json(&self) -> Value {
        Value::from(self.0.clone())
    }
}

/// Renders as `1 + 5t + 10t^2`.
impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, &h) in self.0.iter().enumerate() {
            if h == 0 {
                continue;
            }
            let coeff = if h == 1 && j > 0 { String::new() } else { h.to_string() };
            parts.push(match j {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{j}"),
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Coefficients of `prod_i (1 + t + ... + t^{d_i - 1})`.
pub fn ci_hilbert_series(degrees: &[u64]) -> Vec<usize> {
    let mut acc = vec![1usize];
    for &d in degrees {
        let mut next = vec![0usize; acc.len() + d as usize - 1];
        for (j, &c) in acc.iter().enumerate() {
            for k in 0..d as usize {
                next[j + k] += c;
            }
        }
        acc = next;
    }
    acc
}

/// The degree-`j` part of an ideal, in row echelon form.
pub struct IdealPiece {
    columns: HashMap<Monomial, usize>,
    echelon: Echelon,
    size: usize,
}

impl IdealPiece {
    fn row<'a>(&'a self, p: &'a Poly<BigRational>) -> impl Iterator<Item = (usize, BigRational)> + 'a {
        p.terms().map(|(m, c)| (self.columns[m], c.clone()))
    }

    /// `dim (R / I)_j`.
    pub fn quotient_dim(&self) -> usize {
        self.size - self.echelon.rank()
    }

    /// Whether `p`, homogeneous of this degree, lies in the ideal.
    pub fn contains(&self, p: &Poly<BigRational>) -> bool {
        self.echelon.spans(self.row(p).collect::<Vec<_>>())
    }
}

/// A homogeneous system with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSystem {
    n: usize,
    generators: Vec<Poly<BigRational>>,
    degrees: Vec<u64>,
}

impl NumericSystem {
    /// Generators with their degrees; a zero generator keeps its nominal degree.
    pub fn new(n: usize, generators: Vec<Poly<BigRational>>, degrees: Vec<u64>) -> Result<Self, OracleError> {
        for (g, &d) in generators.iter().zip(&degrees) {
            if !g.is_zero() && g.homogeneous_degree() != Some(d as u128) {
                return Err(OracleError::Inhomogeneous);
            }
        }
        Ok(NumericSystem {
            n,
            generators,
            degrees,
        })
    }

    pub fn from_family(fam: &BinomialFamily) -> Result<Self, OracleError> {
        let generators = (0..fam.n())
            .map(|i| fam.numeric_generator(i))
            .collect::<Option<Vec<_>>>()
            .ok_or(OracleError::NotNumeric)?;
        NumericSystem::new(fam.n(), generators, fam.degrees().to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn socle_degree(&self) -> u64 {
        self.degrees.iter().map(|d| d.saturating_sub(1)).sum()
    }

    /// The degree-`j` part of the ideal.
    pub fn slice(&self, j: u64) -> IdealPiece {
        let basis = monomials_of_degree(self.n, j);
        let columns: HashMap<Monomial, usize> = basis.into_iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut s = IdealPiece {
            size: columns.len(),
            columns,
            echelon: Echelon::new(),
        };
        for (g, &d) in self.generators.iter().zip(&self.degrees) {
            if d > j || g.is_zero() {
                continue;
            }
            for mult in monomials_of_degree(self.n, j - d) {
                let row: Vec<_> = g
                    .terms()
                    .map(|(m, c)| (s.columns[&m.mul(&mult)], c.clone()))
                    .collect();
                s.echelon.insert(row);
            }
        }
        s
    }

    pub fn hilbert_function(&self, max_degree: u64) -> HilbertFunction {
        HilbertFunction(
            (0..=max_degree)
                .map(|j| {
                    let s = self.slice(j);
                    s.size - s.echelon.rank()
                })
                .collect(),
        )
    }

    /// Compares the Hilbert function through degree `D + 1` with that of a
    /// complete intersection of the same degrees.
    pub fn is_complete_intersection(&self) -> bool {
        let top = self.socle_degree() + 1;
        let mut expect = ci_hilbert_series(&self.degrees);
        expect.resize(top as usize + 1, 0);
        for j in 0..=top {
            let s = self.slice(j);
            if s.size - s.echelon.rank() != expect[j as usize] {
                return false;
            }
        }
        true
    }

    pub fn ideal_membership(&self, m: &Monomial) -> bool {
        let s = self.slice(m.degree() as u64);
        s.echelon.spans([(s.columns[m], BigRational::from_integer(1.into()))])
    }

    pub fn poly_membership(&self, p: &Poly<BigRational>) -> Result<bool, OracleError> {
        if p.is_zero() {
            return Ok(true);
        }
        let d = p.homogeneous_degree().ok_or(OracleError::Inhomogeneous)?;
        let s = self.slice(d as u64);
        Ok(s.echelon.spans(s.row(p).collect::<Vec<_>>()))
    }
}

pub fn hilbert_function(fam: &BinomialFamily, max_degree: u64) -> Result<HilbertFunction, OracleError> {
    Ok(NumericSystem::from_family(fam)?.hilbert_function(max_degree))
}

pub fn is_complete_intersection(fam: &BinomialFamily) -> Result<bool, OracleError> {
    Ok(NumericSystem::from_family(fam)?.is_complete_intersection())
}

pub fn ideal_membership(fam: &BinomialFamily, m: &Monomial) -> Result<bool, OracleError> {
    Ok(NumericSystem::from_family(fam)?.ideal_membership(m))
}

/// Checks that in every degree `j <= D` the basis monomials are independent
/// modulo the ideal and as many as `h_j`.
pub fn basis_check(fam: &BinomialFamily) -> Result<bool, OracleError> {
    let sys = NumericSystem::from_family(fam)?;
    if !sys.is_complete_intersection() {
        return Err(OracleError::NotCompleteIntersection);
    }
    for j in 0..=sys.socle_degree() {
        let mut s = sys.slice(j);
        let h = s.size - s.echelon.rank();
        let basis: Vec<Monomial> = monomials_of_degree(fam.n(), j)
            .into_iter()
            .filter(|m| fam.in_basis(m))
            .collect();
        if basis.len() != h {
            return Ok(false);
        }
        for m in &basis {
            if !s.echelon.insert([(s.columns[m], BigRational::from_integer(1.into()))]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn catalecticant_rows<'a>(
    big_f: &'a Poly<BigRational>,
    monomials: &'a [Monomial],
    convention: Convention,
    columns: &'a HashMap<Monomial, usize>,
) -> impl Iterator<Item = Vec<(usize, BigRational)>> + 'a {
    monomials.iter().map(move |m| {
        Poly::term(m.clone(), BigRational::from_integer(1.into()))
            .act_on(big_f, convention)
            .terms()
            .map(|(g, c)| (columns[g], c.clone()))
            .collect()
    })
}

/// Rank of `{m ∘ F}` over the given monomials, all of one degree.
pub fn catalecticant_rank(big_f: &Poly<BigRational>, monomials: &[Monomial], convention: Convention) -> usize {
    let Some(d) = big_f.homogeneous_degree() else {
        return 0;
    };
    let Some(j) = monomials.first().map(Monomial::degree) else {
        return 0;
    };
    if j > d {
        return 0;
    }
    let columns: HashMap<Monomial, usize> = monomials_of_degree(big_f.nvars(), (d - j) as u64)
        .into_iter()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect();
    rank(catalecticant_rows(big_f, monomials, convention, &columns))
}

/// `h_j = dim (R / Ann F)_j`, the rank of the degree-`j` catalecticant.
pub fn inverse_system_dims(
    big_f: &Poly<BigRational>,
    max_degree: u64,
    convention: Convention,
) -> Result<HilbertFunction, OracleError> {
    if !big_f.is_zero() && big_f.homogeneous_degree().is_none() {
        return Err(OracleError::Inhomogeneous);
    }
    Ok(HilbertFunction(
        (0..=max_degree)
            .map(|j| catalecticant_rank(big_f, &monomials_of_degree(big_f.nvars(), j), convention))
            .collect(),
    ))
}

/// Whether the monomials of `M_{d_1..d_n}` span `R / Ann F` in every degree.
pub fn m_spans_ann_quotient(degrees: &[u64], big_f: &Poly<BigRational>, convention: Convention) -> Result<bool, OracleError> {
    let Some(d) = big_f.homogeneous_degree() else {
        return if big_f.is_zero() { Ok(true) } else { Err(OracleError::Inhomogeneous) };
    };
    let n = big_f.nvars();
    for j in 0..=d as u64 {
        let all = monomials_of_degree(n, j);
        let basis: Vec<Monomial> = all
            .iter()
            .filter(|m| m.exponents().iter().zip(degrees).all(|(e, d)| e < d))
            .cloned()
            .collect();
        if catalecticant_rank(big_f, &basis, convention) != catalecticant_rank(big_f, &all, convention) {
            return Ok(false);
        }
    }
    Ok(true)
}
