//! The matrix `C_n` of the system `(x^alpha / x_i^{d_i}) f_i = 0` in degree
//! `D + 1`, its determinant read off the reduction graph, and the radical of
//! the resultant.
//!
//! Rows and columns are both indexed by the degree-`(D+1)` monomials in
//! lex-descending order. The row of `x^alpha` (in `S_i`, so `i` is the least
//! index with `x_i^{d_i} | x^alpha`) holds `a_i` on the diagonal and `-b_i`
//! in the column of its successor in the reduction graph.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::cyclotomic::divisors;
use crate::algebra::rational::random_nonzero;
use crate::algebra::{cyclotomic, Monomial, Poly, SparsePoly};
use crate::error::OracleError;
use crate::family::{BinomialFamily, CoeffAssignment};
use crate::graph::{label_binomial, ReductionGraph, VertexClass};
use crate::linalg::determinant;
use crate::oracle::NumericSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    n: usize,
    degree: u64,
    monomials: Vec<Monomial>,
    /// `i` with row `k` in `S_i`.
    part: Vec<usize>,
    /// Column of the `-b_i` entry of row `k`.
    succ: Vec<usize>,
}

pub fn build_c_matrix(fam: &BinomialFamily) -> CMatrix {
    let degree = fam.resultant_degree();
    let g = ReductionGraph::build(fam, degree);
    let part = (0..g.len()).map(|k| g.label(k).expect("no sinks in degree D + 1")).collect();
    let succ = (0..g.len()).map(|k| g.succ(k).unwrap()).collect();
    CMatrix {
        n: fam.n(),
        degree,
        monomials: g.vertices().to_vec(),
        part,
        succ,
    }
}

impl CMatrix {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Zero-based `i` with `x^alpha` in `S_i`.
    pub fn part(&self, row: usize) -> usize {
        self.part[row]
    }

    pub fn successor_column(&self, row: usize) -> usize {
        self.succ[row]
    }

    /// Rows of `S_i`.
    pub fn partition_class(&self, i: usize) -> Vec<&Monomial> {
        (0..self.size()).filter(|&k| self.part[k] == i).map(|k| &self.monomials[k]).collect()
    }

    /// Re-derives the partition and entry layout from scratch.
    pub fn check_invariants(&self, fam: &BinomialFamily) -> Result<(), String> {
        let mut a_in_column = vec![0usize; self.size()];
        for (k, m) in self.monomials.iter().enumerate() {
            let i = self.part[k];
            let divides = |j: usize| m.exponent(j) >= fam.degree(j);
            if !divides(i) || (0..i).any(divides) {
                return Err(format!("row {m} is not in S_{}", i + 1));
            }
            let row_m = m.checked_div(&fam.leading_power(i)).unwrap();
            if self.monomials[self.succ[k]] != row_m.mul(fam.tail(i)) {
                return Err(format!("row {m}: -b{} sits in the wrong column", i + 1));
            }
            if self.succ[k] == k {
                return Err(format!("row {m}: a and -b share a column"));
            }
            a_in_column[k] += 1;
        }
        if a_in_column.iter().any(|&c| c != 1) {
            return Err("a column does not contain exactly one a-symbol".to_string());
        }
        Ok(())
    }

    /// The matrix with rational coefficients.
    pub fn numeric(&self, a: &[BigRational], b: &[BigRational]) -> Vec<Vec<BigRational>> {
        let mut m = vec![vec![BigRational::zero(); self.size()]; self.size()];
        for k in 0..self.size() {
            let i = self.part[k];
            m[k][k] = a[i].clone();
            m[k][self.succ[k]] = -b[i].clone();
        }
        m
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.degree,
            "rows": (0..self.size()).map(|k| json!({
                "row": self.monomials[k].to_string(),
                "i": self.part[k] + 1,
                "successor": self.monomials[self.succ[k]].to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Aligned text with one line per row, rows labeled by their monomial.
    pub fn to_text(&self) -> String {
        let cell = |k: usize, c: usize| {
            if c == k {
                format!("a{}", self.part[k] + 1)
            } else if c == self.succ[k] {
                format!("-b{}", self.part[k] + 1)
            } else {
                "0".to_string()
            }
        };
        let label_width = self.monomials.iter().map(|m| m.to_string().len()).max().unwrap_or(0);
        let width = (0..self.size())
            .flat_map(|k| (0..self.size()).map(move |c| (k, c)))
            .map(|(k, c)| cell(k, c).len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for k in 0..self.size() {
            let label = self.monomials[k].to_string();
            out.push_str(&format!("{label:<label_width$} |"));
            for c in 0..self.size() {
                out.push_str(&format!(" {:>width$}", cell(k, c)));
            }
            out.push('\n');
        }
        out
    }
}

/// `|C_n|` in factored form: an `a`-monomial times cycle binomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralDet {
    a_exps: Vec<u64>,
    /// Cycle label counts with multiplicities.
    cycles: BTreeMap<Vec<u64>, u64>,
}

/// `prod_{transient v} a_{label(v)} * prod_{cycles C} p(C)` on the graph in degree `D + 1`.
pub fn det_structural(fam: &BinomialFamily) -> StructuralDet {
    let g = ReductionGraph::build(fam, fam.resultant_degree());
    let mut a_exps = vec![0u64; fam.n()];
    for v in 0..g.len() {
        if g.class(v) == VertexClass::Transient {
            a_exps[g.label(v).unwrap()] += 1;
        }
    }
    let mut cycles = BTreeMap::new();
    for c in g.cycles() {
        *cycles.entry(c.label_counts().to_vec()).or_insert(0) += 1;
    }
    StructuralDet { a_exps, cycles }
}

impl StructuralDet {
    pub fn a_exponents(&self) -> &[u64] {
        &self.a_exps
    }

    pub fn cycle_counts(&self) -> &BTreeMap<Vec<u64>, u64> {
        &self.cycles
    }

    pub fn expand(&self) -> SparsePoly {
        self.cycles
            .iter()
            .fold(SparsePoly::a_power(&self.a_exps), |acc, (r, &k)| &acc * &label_binomial(r).pow(k))
    }

    pub fn evaluate(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        let mut acc: BigRational = self.a_exps.iter().zip(a).map(|(&e, v)| pow(v, e)).product();
        for (r, &k) in &self.cycles {
            let ar: BigRational = r.iter().zip(a).map(|(&e, v)| pow(v, e)).product();
            let br: BigRational = r.iter().zip(b).map(|(&e, v)| pow(v, e)).product();
            acc *= pow(&(ar - br), k);
        }
        acc
    }

    /// Whether `a_i` divides the determinant.
    pub fn a_divides(&self, i: usize) -> bool {
        self.a_exps[i] > 0
    }

    /// Radical: the `a`-support times the radical of the cycle product.
    pub fn radical(&self) -> SparsePoly {
        let t: Vec<u64> = self.a_exps.iter().map(|&e| u64::from(e > 0)).collect();
        let rs: Vec<Vec<u64>> = self.cycles.keys().cloned().collect();
        cycle_radical_factors(self.a_exps.len(), &rs)
            .iter()
            .fold(SparsePoly::a_power(&t), |acc, f| &acc * &f.poly)
    }
}

fn pow(v: &BigRational, e: u64) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * v)
}

fn render_product(a_part: &SparsePoly, factors: &[(SparsePoly, u64)]) -> String {
    let mut items = Vec::new();
    if !a_part.is_one() || factors.is_empty() {
        items.push(a_part.to_string());
    }
    let single = items.len() + factors.len() == 1;
    for (p, k) in factors {
        let body = if p.len() > 1 && !(single && *k == 1) { format!("({p})") } else { p.to_string() };
        items.push(if *k == 1 { body } else { format!("{body}^{k}") });
    }
    items.join("*")
}

/// Renders as `a1^6*a2^3*a3^2*(a2*a3 - b2*b3)^2`.
impl fmt::Display for StructuralDet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<_> = self.cycles.iter().map(|(r, &k)| (label_binomial(r), k)).collect();
        f.write_str(&render_product(&SparsePoly::a_power(&self.a_exps), &factors))
    }
}

/// `|C_n|` by fraction-free elimination on the specialized matrix.
pub fn det_numeric_oracle(fam: &BinomialFamily) -> Result<BigRational, OracleError> {
    let (a, b) = fam.coefficients().values().ok_or(OracleError::NotNumeric)?;
    Ok(determinant(&build_c_matrix(fam).numeric(&a, &b)))
}

/// One candidate irreducible factor `Psi_e(A_s, B_s)` of a cycle binomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalFactor {
    pub s: Vec<u64>,
    pub e: u64,
    pub poly: SparsePoly,
}

/// Factors `a^r - b^r = prod_{e | g} Psi_e(a^s, b^s)` with `g = gcd(r)`, `s = r / g`.
fn cycle_radical_factors(n: usize, rs: &[Vec<u64>]) -> Vec<RadicalFactor> {
    let mut keyed: BTreeMap<(Vec<u64>, u64), SparsePoly> = BTreeMap::new();
    for r in rs {
        let g = r.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g == 0 {
            continue;
        }
        let s: Vec<u64> = r.iter().map(|x| x / g).collect();
        let (big_a, big_b) = (SparsePoly::a_power(&s), SparsePoly::b_power(&s));
        for e in divisors(g) {
            keyed
                .entry((s.clone(), e))
                .or_insert_with(|| cyclotomic(e).homogenize(&big_a, &big_b, n));
        }
    }
    let mut out: Vec<RadicalFactor> = Vec::new();
    for ((s, e), poly) in keyed {
        if out.iter().all(|f| f.poly != poly) {
            out.push(RadicalFactor { s, e, poly });
        }
    }
    out
}

/// Distinct candidate irreducible factors of `p(G)`.
pub fn radical_of_cycle_product(g: &ReductionGraph) -> Vec<RadicalFactor> {
    let rs: Vec<Vec<u64>> = g.cycles().iter().map(|c| c.label_counts().to_vec()).collect();
    cycle_radical_factors(g.n(), &rs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TStatus {
    Certain,
    /// Every probe at `a_i = 0` failed to be a complete intersection.
    Probabilistic,
    /// Undecided; `t_i = 1` is an upper bound.
    Bounded,
}

impl TStatus {
    pub fn name(self) -> &'static str {
        match self {
            TStatus::Certain => "certain",
            TStatus::Probabilistic => "probabilistic",
            TStatus::Bounded => "bounded",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeOptions {
    pub trials: usize,
    pub seed: u64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { trials: 5, seed: 0 }
    }
}

/// `sqrt(res) = a_1^{t_1}...a_n^{t_n} * prod factors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalResult {
    n: usize,
    t: Vec<u64>,
    status: Vec<TStatus>,
    factors: Vec<RadicalFactor>,
}

impl RadicalResult {
    pub fn t(&self) -> &[u64] {
        &self.t
    }

    pub fn status(&self) -> &[TStatus] {
        &self.status
    }

    pub fn factors(&self) -> &[RadicalFactor] {
        &self.factors
    }

    pub fn all_certain(&self) -> bool {
        self.status.iter().all(|&s| s == TStatus::Certain)
    }

    pub fn product(&self) -> SparsePoly {
        self.factors
            .iter()
            .fold(SparsePoly::a_power(&self.t), |acc, f| &acc * &f.poly)
    }

    /// The radical after substituting the assigned values, as a product of
    /// distinct factors. Symbols that become constants drop out, and monomial
    /// factors contribute their symbols once each.
    pub fn specialize(&self, assign: &CoeffAssignment) -> SparsePoly {
        let n = self.n;
        let mut candidates: Vec<SparsePoly> = (0..n)
            .filter(|&i| self.t[i] == 1)
            .map(|i| SparsePoly::a(n, i))
            .collect();
        candidates.extend(self.factors.iter().map(|f| f.poly.clone()));
        let mut kept: Vec<SparsePoly> = Vec::new();
        let push = |p: SparsePoly, kept: &mut Vec<SparsePoly>| {
            if !kept.contains(&p) {
                kept.push(p);
            }
        };
        for c in candidates {
            let p = c.substitute(assign.a(), assign.b());
            if p.is_zero() {
                return SparsePoly::zero();
            }
            if p.constant_value().is_some() {
                continue;
            }
            if p.as_term().is_some() {
                for k in p.support() {
                    let sym = if k < n { SparsePoly::a(n, k) } else { SparsePoly::b(n, k - n) };
                    push(sym, &mut kept);
                }
            } else {
                push(normalize(&p), &mut kept);
            }
        }
        kept.iter().fold(SparsePoly::one(n), |acc, f| &acc * f)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "t": self.t,
            "status": self.status.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "factors": self.factors.iter().map(|f| json!({
                "s": f.s,
                "e": f.e,
                "poly": f.poly.to_string(),
            })).collect::<Vec<_>>(),
            "product": self.to_string(),
        })
    }
}

/// Scales so that the first printed term has coefficient 1.
fn normalize(p: &SparsePoly) -> SparsePoly {
    match p.terms().next() {
        Some((_, c)) => p.scale(&(BigRational::one() / c)),
        None => SparsePoly::zero(),
    }
}

/// Renders as `a1*a2*a3*(a2*a3 - b2*b3)`.
impl fmt::Display for RadicalResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<_> = self.factors.iter().map(|x| (x.poly.clone(), 1)).collect();
        f.write_str(&render_product(&SparsePoly::a_power(&self.t), &factors))
    }
}

/// Decides `t_i` from the graph in degree `D + 1` where possible, and
/// optionally probes the rest numerically.
pub fn resultant_radical(fam: &BinomialFamily, probe: Option<ProbeOptions>) -> RadicalResult {
    let n = fam.n();
    let g = ReductionGraph::build(fam, fam.resultant_degree());
    let factors = radical_of_cycle_product(&g);
    let mut t = vec![1u64; n];
    let mut status = vec![TStatus::Certain; n];
    if fam.has_pure_power_tail() {
        for i in 0..n {
            let all_on_cycles = (0..g.len())
                .filter(|&v| g.label(v) == Some(i))
                .all(|v| g.class(v) == VertexClass::Cyclic);
            if all_on_cycles {
                t[i] = 0;
            } else if fam.no_tail_is_power_of(i) {
                t[i] = 1;
            } else {
                status[i] = TStatus::Bounded;
                if let Some(opts) = probe {
                    if probe_a_zero(fam, i, opts) {
                        t[i] = 0;
                        status[i] = TStatus::Certain;
                    } else {
                        status[i] = TStatus::Probabilistic;
                    }
                }
            }
        }
    }
    RadicalResult { n, t, status, factors }
}

/// True if some random specialization with `a_i = 0` is a complete intersection.
fn probe_a_zero(fam: &BinomialFamily, i: usize, opts: ProbeOptions) -> bool {
    let n = fam.n();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (0..opts.trials).any(|_| {
        let gens = (0..n)
            .map(|j| {
                let a = if j == i { BigRational::zero() } else { random_nonzero(&mut rng, 1000) };
                let b = random_nonzero(&mut rng, 1000);
                Poly::from_terms(n, [(fam.leading_power(j), a), (fam.tail(j).clone(), -b)])
            })
            .collect();
        NumericSystem::new(n, gens, fam.degrees().to_vec())
            .expect("binomials are homogeneous")
            .is_complete_intersection()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::poly_divides;

    fn ternary_cyclic() -> BinomialFamily {
        BinomialFamily::from_exponents(&[2, 2, 2], &[&[1, 0, 1], &[0, 1, 1], &[0, 1, 1]]).unwrap()
    }

    fn binary_loop() -> BinomialFamily {
        BinomialFamily::from_exponents(&[2, 2], &[&[1, 1], &[1, 1]]).unwrap()
    }

    fn values(a: &[i64], b: &[i64]) -> CoeffAssignment {
        let v = |x: &[i64]| x.iter().map(|&k| int(k)).collect();
        CoeffAssignment::numeric(v(a), v(b)).unwrap()
    }

    #[test]
    fn ternary_cyclic_matrix_and_determinant() {
        let fam = ternary_cyclic();
        let c = build_c_matrix(&fam);
        assert_eq!(c.size(), 15);
        c.check_invariants(&fam).unwrap();
        let det = det_structural(&fam);
        assert_eq!(det.to_string(), "a1^6*a2^3*a3^2*(a2*a3 - b2*b3)^2");
        assert_eq!(det.a_exponents(), &[6, 3, 2]);
        let f = fam.specialize(&values(&[1, 1, 1], &[1, 1, 1])).unwrap();
        assert_eq!(det_numeric_oracle(&f).unwrap(), int(0));
        let f = fam.specialize(&values(&[1, 1, 1], &[1, 1, 2])).unwrap();
        assert_eq!(det_numeric_oracle(&f).unwrap(), int(1));
    }

    #[test]
    fn binary_loop_matrix() {
        let fam = binary_loop();
        let c = build_c_matrix(&fam);
        assert_eq!(c.size(), 4);
        let s1: Vec<String> = c.partition_class(0).iter().map(|m| m.to_string()).collect();
        let s2: Vec<String> = c.partition_class(1).iter().map(|m| m.to_string()).collect();
        assert_eq!(s1, ["x1^3", "x1^2*x2"]);
        assert_eq!(s2, ["x1*x2^2", "x2^3"]);
        let det = det_structural(&fam);
        assert_eq!(det.to_string(), "a1*a2*(a1*a2 - b1*b2)");
        let f = fam.specialize(&values(&[2, 3], &[5, 7])).unwrap();
        assert_eq!(det_numeric_oracle(&f).unwrap(), int(2 * 3 * (6 - 35)));
    }

    #[test]
    fn radical_factors_merge_cyclotomic_pieces() {
        let f = cycle_radical_factors(2, &[vec![1, 1], vec![2, 2]]);
        let polys: Vec<String> = f.iter().map(|x| x.poly.to_string()).collect();
        assert_eq!(polys, ["a1*a2 - b1*b2", "a1*a2 + b1*b2"]);
        assert!(cycle_radical_factors(2, &[]).is_empty());
    }

    #[test]
    fn radical_of_ternary_cyclic() {
        let fam = ternary_cyclic();
        let r = resultant_radical(&fam, None);
        assert_eq!(r.to_string(), "a1*a2*a3*(a2*a3 - b2*b3)");
        assert!(r.all_certain());
        assert!(poly_divides(&r.product(), &det_structural(&fam).expand()).unwrap());
        assert_eq!(det_structural(&fam).radical(), r.product());
    }

    #[test]
    fn specialization_of_radical() {
        let r = resultant_radical(&ternary_cyclic(), None);
        let zero_b = CoeffAssignment::new(vec![None; 3], vec![Some(int(0)); 3]).unwrap();
        assert_eq!(r.specialize(&zero_b).to_string(), "a1*a2*a3");
        let ones_a = CoeffAssignment::new(vec![Some(int(1)); 3], vec![None; 3]).unwrap();
        assert_eq!(r.specialize(&ones_a).to_string(), "1 - b2*b3");
    }

    #[test]
    fn pure_power_tail_uses_graph_rules_and_probe() {
        // f3 = a3*x3^2 - b3*x1^2 has a pure-power tail
        let fam = BinomialFamily::from_exponents(&[2, 2, 2], &[&[1, 1, 0], &[1, 0, 1], &[2, 0, 0]]).unwrap();
        let r = resultant_radical(&fam, None);
        assert_eq!(r.t()[1], 1);
        assert_eq!(r.t()[2], 1);
        assert_eq!(r.status()[1], TStatus::Certain);
        let probed = resultant_radical(&fam, Some(ProbeOptions::default()));
        assert_ne!(probed.status()[0], TStatus::Bounded);
        assert_eq!(probed, resultant_radical(&fam, Some(ProbeOptions::default())));
    }

    #[test]
    fn text_layout_has_one_line_per_row() {
        let c = build_c_matrix(&binary_loop());
        let text = c.to_text();
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().next().unwrap().starts_with("x1^3    |  a1 -b1"));
        assert_eq!(c.to_json()["rows"][0]["successor"], "x1^2*x2");
    }
}
