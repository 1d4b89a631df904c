//! Dual generators read off the reduction graph in the socle degree.
//!
//! With target `t = x_1^{d_1-1}...x_n^{d_n-1}`, a degree-`D` monomial
//! `x^alpha` whose path reaches `t` with label counts `r` gets the
//! coefficient `a^{s-r} b^r`, where `s_i` is the largest number of
//! `i`-labeled edges on any path into `t`. Under differentiation the
//! coefficient is additionally multiplied by `D! / alpha!`. Monomials
//! without a path to `t` get zero.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{multinomial, CoeffMonomial, Convention, Monomial, Poly, SparsePoly};
use crate::family::BinomialFamily;
use crate::graph::ReductionGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGenerator {
    socle_degree: u64,
    convention: Convention,
    s: Vec<u64>,
    /// Lex-descending, zero coefficients omitted.
    terms: Vec<(Monomial, CoeffMonomial)>,
    n: usize,
}

/// Label counts `r` of the path from each in-tree vertex to the target.
fn in_tree_counts(g: &ReductionGraph, target: usize) -> Vec<(usize, Vec<u64>)> {
    let n = g.n();
    let order = g.in_tree(target);
    let mut counts: Vec<Option<Vec<u64>>> = vec![None; g.len()];
    counts[target] = Some(vec![0; n]);
    let mut out = Vec::with_capacity(order.len());
    for &v in &order {
        if v != target {
            let w = g.succ(v).expect("in-tree vertex has an edge");
            let mut r = counts[w].clone().expect("successor precedes in breadth-first order");
            r[g.label(v).unwrap()] += 1;
            assert!(counts[v].is_none(), "path into the target is not unique");
            counts[v] = Some(r);
        }
        out.push((v, counts[v].clone().unwrap()));
    }
    out
}

fn socle_graph(fam: &BinomialFamily) -> (ReductionGraph, usize) {
    let g = ReductionGraph::build(fam, fam.socle_degree());
    let t = Monomial::new(fam.degrees().iter().map(|d| d - 1).collect());
    let target = g.index_of(&t).expect("target has the socle degree");
    assert!(g.succ(target).is_none(), "target must be a sink");
    (g, target)
}

/// `s_i`: the most `i`-labeled edges on a path into the target.
pub fn s_vector(fam: &BinomialFamily) -> Vec<u64> {
    let (g, target) = socle_graph(fam);
    let mut s = vec![0u64; fam.n()];
    for (_, r) in in_tree_counts(&g, target) {
        for (si, ri) in s.iter_mut().zip(&r) {
            *si = (*si).max(*ri);
        }
    }
    s
}

/// The dual generator with the family's coefficient assignment applied.
pub fn dual_generator(fam: &BinomialFamily, convention: Convention) -> DualGenerator {
    let (g, target) = socle_graph(fam);
    let tree = in_tree_counts(&g, target);
    let n = fam.n();
    let mut s = vec![0u64; n];
    for (_, r) in &tree {
        for (si, ri) in s.iter_mut().zip(r) {
            *si = (*si).max(*ri);
        }
    }
    let big_d = fam.socle_degree();
    let mut terms: Vec<(Monomial, CoeffMonomial)> = tree
        .iter()
        .filter_map(|(v, r)| {
            let alpha = g.vertices()[*v].clone();
            let s_minus_r: Vec<u64> = s.iter().zip(r).map(|(x, y)| x - y).collect();
            let mut c = CoeffMonomial::a_b_power(&s_minus_r, r);
            if convention == Convention::Differentiation {
                let k = multinomial(big_d, alpha.exponents()).expect("alpha has degree D");
                c = c.scale(&BigRational::from_integer(k.into()));
            }
            let c = fam.substitute_coeff(&c).expect("polynomial coefficient");
            (!c.is_zero()).then_some((alpha, c))
        })
        .collect();
    terms.sort_by(|x, y| y.0.cmp(&x.0));
    DualGenerator {
        socle_degree: big_d,
        convention,
        s,
        terms,
        n,
    }
}

impl DualGenerator {
    pub fn socle_degree(&self) -> u64 {
        self.socle_degree
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn s(&self) -> &[u64] {
        &self.s
    }

    pub fn terms(&self) -> &[(Monomial, CoeffMonomial)] {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &Monomial) -> Option<&CoeffMonomial> {
        self.terms.iter().find(|(m, _)| m == alpha).map(|(_, c)| c)
    }

    /// `F` as a polynomial in `X` with polynomial coefficients.
    pub fn to_poly(&self) -> Poly<SparsePoly> {
        Poly::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.to_sparse().expect("dual coefficients are polynomial"))),
        )
    }

    /// `F` with rational coefficients, when no free symbol remains.
    pub fn to_numeric(&self) -> Option<Poly<BigRational>> {
        self.to_poly().to_numeric()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "D": self.socle_degree,
            "convention": self.convention.name(),
            "s": self.s,
            "terms": self.terms.iter().map(|(m, c)| json!({
                "alpha": m.exponents(),
                "coeff": c.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `f ∘ F` under the given convention.
pub fn apply_action<C: crate::algebra::Coefficient>(f: &Poly<C>, big_f: &Poly<C>, convention: Convention) -> Poly<C> {
    f.act_on(big_f, convention)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Annihilation {
    /// `(i, f_i ∘ F)` for every generator that does not annihilate `F`.
    pub residuals: Vec<(usize, Poly<SparsePoly>)>,
}

impl Annihilation {
    pub fn holds(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Checks `f_i ∘ F = 0` for every generator of the family.
pub fn verify_annihilation(fam: &BinomialFamily, big_f: &Poly<SparsePoly>, convention: Convention) -> Annihilation {
    let residuals = (0..fam.n())
        .filter_map(|i| {
            let r = fam.generator(i).act_on(big_f, convention);
            (!r.is_zero()).then_some((i, r))
        })
        .collect();
    Annihilation { residuals }
}
