//! Rewriting monomials along the reduction graph, with relations that
//! certify each step.
//!
//! Following a path `m^(0) -> m^(1) -> ... -> m^(r)` with labels
//! `i_1..i_r` gives
//!
//! ```text
//! a_{i_1}...a_{i_r} m^(0) - sum_s p_s (m^(s-1) / x_{i_s}^{d_{i_s}}) f_{i_s} = b_{i_1}...b_{i_r} m^(r)
//! ```
//!
//! with `p_s = prod_{l>s} a_{i_l} * prod_{l<s} b_{i_l}`.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{CoeffMonomial, Monomial, Poly, SparsePoly};
use crate::error::OracleError;
use crate::family::BinomialFamily;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutcomeKind {
    ToBasis,
    /// The path revisits a vertex. The input is zero modulo the ideal
    /// provided the generators form a regular sequence.
    ToCycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub kind: OutcomeKind,
    pub input: Monomial,
    /// `m^(0), ..., m^(r)`; for cycles the last entry repeats an earlier one.
    pub path: Vec<Monomial>,
    /// Zero-based labels `i_1..i_r`.
    pub labels: Vec<usize>,
    /// Label counts over the whole path.
    pub r: Vec<u64>,
    /// The basis monomial reached (`ToBasis` only).
    pub basis: Option<Monomial>,
    /// `b^r / a^r` under the family's assignment (`ToBasis` only).
    pub coeff: Option<CoeffMonomial>,
    /// Position in `path` of the first repeated vertex (`ToCycle` only).
    pub cycle_start: Option<usize>,
}

impl ReductionOutcome {
    pub fn cycle_entry(&self) -> Option<&Monomial> {
        self.cycle_start.map(|j| &self.path[j])
    }

    pub fn labels_one_based(&self) -> Vec<usize> {
        self.labels.iter().map(|i| i + 1).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "input": self.input.to_string(),
            "kind": match self.kind {
                OutcomeKind::ToBasis => "to_basis",
                OutcomeKind::ToCycle => "to_cycle",
            },
            "basis": self.basis.as_ref().map(|m| m.to_string()),
            "coeff": self.coeff.as_ref().map(|c| c.to_string()),
            "cycle_entry": self.cycle_entry().map(|m| m.to_string()),
            "conditional_zero": self.kind == OutcomeKind::ToCycle,
            "path": self.path.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "labels": self.labels_one_based(),
            "r": self.r,
        })
    }
}

/// Follows edges with labels among the first `k` generators until the
/// monomial lies in `M_{d_1..d_k}` or a vertex repeats.
pub fn reduce_monomial(fam: &BinomialFamily, m: &Monomial, k: usize) -> ReductionOutcome {
    assert!((1..=fam.n()).contains(&k), "cutoff must lie in 1..=n");
    let mut path = vec![m.clone()];
    let mut labels = Vec::new();
    let mut seen: HashMap<Monomial, usize> = HashMap::from([(m.clone(), 0)]);
    let mut r = vec![0u64; fam.n()];
    let mut cur = m.clone();
    let cycle_start = loop {
        if fam.in_basis_prefix(&cur, k) {
            break None;
        }
        let (i, next) = fam.successor(&cur).expect("monomial outside the basis has an edge");
        debug_assert!(i < k);
        labels.push(i);
        r[i] += 1;
        path.push(next.clone());
        if let Some(&j) = seen.get(&next) {
            break Some(j);
        }
        seen.insert(next.clone(), path.len() - 1);
        cur = next;
    };
    match cycle_start {
        None => {
            let coeff = fam
                .substitute_coeff(&CoeffMonomial::b_over_a(&r))
                .expect("leading coefficients are nonzero");
            ReductionOutcome {
                kind: OutcomeKind::ToBasis,
                input: m.clone(),
                basis: Some(cur),
                coeff: Some(coeff),
                path,
                labels,
                r,
                cycle_start: None,
            }
        }
        Some(j) => ReductionOutcome {
            kind: OutcomeKind::ToCycle,
            input: m.clone(),
            basis: None,
            coeff: None,
            path,
            labels,
            r,
            cycle_start: Some(j),
        },
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyReduction {
    /// Linear combination of basis monomials.
    pub normal_form: Poly<BigRational>,
    /// Input monomials that reach a cycle and were mapped to zero.
    pub cycle_monomials: Vec<Monomial>,
}

impl PolyReduction {
    /// Whether the result relies on the generators forming a regular sequence.
    pub fn conditional_zero(&self) -> bool {
        !self.cycle_monomials.is_empty()
    }
}

/// Reduces every term of `p` independently and accumulates the results.
pub fn reduce_polynomial(fam: &BinomialFamily, p: &Poly<BigRational>) -> Result<PolyReduction, OracleError> {
    let (a, b) = fam.coefficients().values().ok_or(OracleError::NotNumeric)?;
    let mut normal_form = Poly::zero(fam.n());
    let mut cycle_monomials = Vec::new();
    for (m, c) in p.terms() {
        let out = reduce_monomial(fam, m, fam.n());
        match out.kind {
            OutcomeKind::ToBasis => {
                let k = out.coeff.unwrap().evaluate(&a, &b).expect("numeric family");
                if !k.is_zero() {
                    normal_form.add_term(out.basis.unwrap(), c * k);
                }
            }
            OutcomeKind::ToCycle => cycle_monomials.push(m.clone()),
        }
    }
    Ok(PolyReduction {
        normal_form,
        cycle_monomials,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateStep {
    /// Zero-based generator index.
    pub generator: usize,
    pub multiplier: Monomial,
    pub scalar: CoeffMonomial,
}

/// `lhs_coeff * start - sum scalar * multiplier * f_generator = rhs_coeff * rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs_coeff: CoeffMonomial,
    pub start: Monomial,
    pub steps: Vec<CertificateStep>,
    pub rhs_coeff: CoeffMonomial,
    pub rhs: Monomial,
}

impl Relation {
    fn along(fam: &BinomialFamily, path: &[Monomial], labels: &[usize]) -> Relation {
        let n = fam.n();
        let a = |i| CoeffMonomial::a(n, i);
        let b = |i| CoeffMonomial::b(n, i);
        let product = |xs: &[usize], f: &dyn Fn(usize) -> CoeffMonomial| {
            xs.iter().fold(CoeffMonomial::one(n), |acc, &i| &acc * &f(i))
        };
        let steps = labels
            .iter()
            .enumerate()
            .map(|(s, &i)| CertificateStep {
                generator: i,
                multiplier: path[s]
                    .checked_div(&fam.leading_power(i))
                    .expect("edge source is divisible by its leading power"),
                scalar: &product(&labels[s + 1..], &a) * &product(&labels[..s], &b),
            })
            .collect();
        Relation {
            lhs_coeff: product(labels, &a),
            start: path[0].clone(),
            steps,
            rhs_coeff: product(labels, &b),
            rhs: path.last().unwrap().clone(),
        }
    }

    /// Left side minus right side, expanded with the family's coefficients.
    pub fn residual(&self, fam: &BinomialFamily) -> Poly<SparsePoly> {
        let sub = |c: &CoeffMonomial| {
            fam.substitute(&c.to_sparse().expect("certificate scalars are polynomial"))
        };
        let mut acc = Poly::term(self.start.clone(), sub(&self.lhs_coeff));
        for st in &self.steps {
            let t = fam.generator(st.generator).mul_term(&st.multiplier, &sub(&st.scalar));
            acc = acc.sub(&t);
        }
        acc.sub(&Poly::term(self.rhs.clone(), sub(&self.rhs_coeff)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lhs_coeff": self.lhs_coeff.to_string(),
            "start": self.start.to_string(),
            "steps": self.steps.iter().map(|s| json!({
                "generator": s.generator + 1,
                "multiplier": s.multiplier.to_string(),
                "scalar": s.scalar.to_string(),
            })).collect::<Vec<_>>(),
            "rhs_coeff": self.rhs_coeff.to_string(),
            "rhs": self.rhs.to_string(),
        })
    }

    fn step_terms(&self) -> Vec<String> {
        self.steps
            .iter()
            .map(|s| {
                let f = format!("f{}", s.generator + 1);
                let scalar = scalar_factor(&s.scalar);
                let mult = if s.multiplier.is_one() {
                    String::new()
                } else {
                    format!("{}*", s.multiplier)
                };
                format!("{scalar}{mult}{f}")
            })
            .collect()
    }
}

fn scalar_factor(c: &CoeffMonomial) -> String {
    let text = c.to_string();
    if text == "1" {
        String::new()
    } else if text.starts_with('-') || text.contains('/') {
        format!("({text})*")
    } else {
        format!("{text}*")
    }
}

fn scaled(c: &CoeffMonomial, m: &Monomial) -> String {
    match (c.to_string().as_str(), m.is_one()) {
        ("1", _) => m.to_string(),
        (_, true) => c.to_string(),
        _ => format!("{}{m}", scalar_factor(c)),
    }
}

/// Relations certifying a reduction: the path into the basis or into the
/// cycle entry, and for cycles also the relation around the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub input: Monomial,
    pub kind: OutcomeKind,
    pub path: Relation,
    pub cycle: Option<Relation>,
}

pub fn certificate(fam: &BinomialFamily, m: &Monomial) -> Certificate {
    let out = reduce_monomial(fam, m, fam.n());
    match out.cycle_start {
        None => Certificate {
            input: m.clone(),
            kind: out.kind,
            path: Relation::along(fam, &out.path, &out.labels),
            cycle: None,
        },
        Some(j) => Certificate {
            input: m.clone(),
            kind: out.kind,
            path: Relation::along(fam, &out.path[..=j], &out.labels[..j]),
            cycle: Some(Relation::along(fam, &out.path[j..], &out.labels[j..])),
        },
    }
}

impl Certificate {
    pub fn step_count(&self) -> usize {
        self.path.steps.len() + self.cycle.as_ref().map_or(0, |c| c.steps.len())
    }

    /// True when every relation expands to zero.
    pub fn verify(&self, fam: &BinomialFamily) -> bool {
        self.path.residual(fam).is_zero() && self.cycle.as_ref().is_none_or(|c| c.residual(fam).is_zero())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "input": self.input.to_string(),
            "kind": match self.kind {
                OutcomeKind::ToBasis => "to_basis",
                OutcomeKind::ToCycle => "to_cycle",
            },
            "path": self.path.to_json(),
            "cycle": self.cycle.as_ref().map(Relation::to_json),
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.path;
        write!(f, "{}", scaled(&p.lhs_coeff, &p.start))?;
        for t in p.step_terms() {
            write!(f, " - {t}")?;
        }
        write!(f, " = {}", scaled(&p.rhs_coeff, &p.rhs))?;
        if let Some(c) = &self.cycle {
            let sum = c.step_terms();
            write!(
                f,
                "\n({} - {})*{} = {}",
                c.lhs_coeff,
                c.rhs_coeff,
                c.start,
                if sum.is_empty() { "0".to_string() } else { sum.join(" + ") }
            )?;
        }
        Ok(())
    }
}
