//! The reduction graph on degree-`d` monomials: each monomial divisible by
//! some `x_i^{d_i}` has one outgoing edge, labeled by the least such `i`,
//! to `m * m_i / x_i^{d_i}`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::algebra::{monomials_of_degree, Monomial, SparsePoly};
use crate::family::BinomialFamily;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Sink,
    Transient,
    Cyclic,
}

/// A directed cycle, listed from its lex-smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    vertices: Vec<Monomial>,
    label_counts: Vec<u64>,
}

impl Cycle {
    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    /// `r_i`, the number of `i`-labeled edges on the cycle.
    pub fn label_counts(&self) -> &[u64] {
        &self.label_counts
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Where the successor iteration from a vertex ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminal {
    Sink(usize),
    /// Index into [`ReductionGraph::cycles`].
    Cycle(usize),
}

#[derive(Clone, Debug)]
pub struct ReductionGraph {
    n: usize,
    d: u64,
    vertices: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    succ: Vec<Option<usize>>,
    label: Vec<Option<usize>>,
    class: Vec<VertexClass>,
    cycle_of: Vec<Option<usize>>,
    cycles: Vec<Cycle>,
}

const WHITE: u8 = 0;
const GRAY: u8 = 1;
const BLACK: u8 = 2;

impl ReductionGraph {
    pub fn build(fam: &BinomialFamily, d: u64) -> ReductionGraph {
        let n = fam.n();
        let vertices = monomials_of_degree(n, d);
        let index: HashMap<Monomial, usize> =
            vertices.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let mut succ = vec![None; vertices.len()];
        let mut label = vec![None; vertices.len()];
        for (k, m) in vertices.iter().enumerate() {
            if let Some((i, next)) = fam.successor(m) {
                succ[k] = Some(index[&next]);
                label[k] = Some(i);
            }
        }

        let mut color = vec![WHITE; vertices.len()];
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut walk = Vec::new();
        for start in 0..vertices.len() {
            if color[start] != WHITE {
                continue;
            }
            walk.clear();
            let mut v = start;
            loop {
                color[v] = GRAY;
                walk.push(v);
                match succ[v] {
                    Some(w) if color[w] == WHITE => v = w,
                    Some(w) if color[w] == GRAY => {
                        let at = walk.iter().position(|&u| u == w).expect("gray vertex is on the walk");
                        found.push(walk[at..].to_vec());
                        break;
                    }
                    _ => break,
                }
            }
            for &u in &walk {
                color[u] = BLACK;
            }
        }

        let mut cycles: Vec<Cycle> = found
            .into_iter()
            .map(|cyc| {
                let start = (0..cyc.len()).min_by(|&x, &y| vertices[cyc[x]].cmp(&vertices[cyc[y]])).unwrap();
                let mut label_counts = vec![0u64; n];
                for &u in &cyc {
                    label_counts[label[u].unwrap()] += 1;
                }
                Cycle {
                    vertices: cyc[start..].iter().chain(&cyc[..start]).map(|&u| vertices[u].clone()).collect(),
                    label_counts,
                }
            })
            .collect();
        // lex-descending by first vertex, matching the vertex order
        cycles.sort_by(|x, y| y.vertices[0].cmp(&x.vertices[0]));

        let mut cycle_of = vec![None; vertices.len()];
        for (c, cyc) in cycles.iter().enumerate() {
            for m in &cyc.vertices {
                cycle_of[index[m]] = Some(c);
            }
        }
        let class = (0..vertices.len())
            .map(|k| match (succ[k], cycle_of[k]) {
                (None, _) => VertexClass::Sink,
                (Some(_), Some(_)) => VertexClass::Cyclic,
                (Some(_), None) => VertexClass::Transient,
            })
            .collect();

        ReductionGraph {
            n,
            d,
            vertices,
            index,
            succ,
            label,
            class,
            cycle_of,
            cycles,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    /// All degree-`d` monomials, lexicographically descending.
    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn succ(&self, v: usize) -> Option<usize> {
        self.succ[v]
    }

    /// Zero-based generator index labeling the edge out of `v`.
    pub fn label(&self, v: usize) -> Option<usize> {
        self.label[v]
    }

    pub fn class(&self, v: usize) -> VertexClass {
        self.class[v]
    }

    pub fn cycle_of(&self, v: usize) -> Option<usize> {
        self.cycle_of[v]
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().flatten().count()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.succ[v].is_none()).collect()
    }

    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (v, s) in self.succ.iter().enumerate() {
            if let Some(w) = s {
                pred[*w].push(v);
            }
        }
        pred
    }

    /// Vertices visited from `v` up to and including the sink or the first
    /// cycle vertex reached.
    pub fn path_from(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut u = v;
        while self.cycle_of[u].is_none() {
            match self.succ[u] {
                Some(w) => {
                    path.push(w);
                    u = w;
                }
                None => break,
            }
        }
        path
    }

    pub fn terminal(&self, v: usize) -> Terminal {
        let last = *self.path_from(v).last().unwrap();
        match self.cycle_of[last] {
            Some(c) => Terminal::Cycle(c),
            None => Terminal::Sink(last),
        }
    }

    /// The in-tree of `target`: every vertex with a path to it, in
    /// breadth-first order starting from `target` itself.
    pub fn in_tree(&self, target: usize) -> Vec<usize> {
        let pred = self.predecessors();
        let mut order = vec![target];
        let mut queue = VecDeque::from([target]);
        let mut seen = vec![false; self.len()];
        seen[target] = true;
        while let Some(v) = queue.pop_front() {
            for &u in &pred[v] {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                    queue.push_back(u);
                }
            }
        }
        order
    }

    /// Product of the cycle polynomials of all cycles; `1` without cycles.
    pub fn cycle_polynomial(&self) -> SparsePoly {
        self.cycles
            .iter()
            .fold(SparsePoly::one(self.n), |acc, c| &acc * &cycle_polynomial(c))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph reduction_graph_{} {{", self.d);
        out.push_str("  node [shape=plaintext];\n");
        for (v, m) in self.vertices.iter().enumerate() {
            let style = match self.class[v] {
                VertexClass::Sink => " [shape=box]",
                VertexClass::Cyclic => " [shape=ellipse, style=filled, fillcolor=lightgray]",
                VertexClass::Transient => "",
            };
            let _ = writeln!(out, "  \"{m}\"{style};");
        }
        for v in 0..self.len() {
            if let (Some(w), Some(i)) = (self.succ[v], self.label[v]) {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label={}];",
                    self.vertices[v],
                    self.vertices[w],
                    i + 1
                );
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = (0..self.len())
            .filter_map(|v| {
                let w = self.succ[v]?;
                Some(json!({
                    "from": self.vertices[v].to_string(),
                    "to": self.vertices[w].to_string(),
                    "label": self.label[v].unwrap() + 1,
                }))
            })
            .collect();
        let cycles: Vec<Value> = self
            .cycles
            .iter()
            .map(|c| {
                json!({
                    "vertices": c.vertices.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    "r": c.label_counts,
                })
            })
            .collect();
        json!({
            "d": self.d,
            "vertices": self.vertices.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "edges": edges,
            "cycles": cycles,
        })
    }
}

/// `a^r - b^r` for the label counts `r` of a cycle.
pub fn cycle_polynomial(c: &Cycle) -> SparsePoly {
    label_binomial(c.label_counts())
}

pub fn label_binomial(r: &[u64]) -> SparsePoly {
    &SparsePoly::a_power(r) - &SparsePoly::b_power(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::count_of_degree;
    use proptest::prelude::*;

    fn ternary_cyclic() -> BinomialFamily {
        BinomialFamily::from_exponents(&[2, 2, 2], &[&[1, 0, 1], &[0, 1, 1], &[0, 1, 1]]).unwrap()
    }

    fn ternary_chain() -> BinomialFamily {
        BinomialFamily::from_exponents(&[2, 2, 2], &[&[1, 1, 0], &[1, 0, 1], &[2, 0, 0]]).unwrap()
    }

    fn binary_loop() -> BinomialFamily {
        BinomialFamily::from_exponents(&[2, 2], &[&[1, 1], &[1, 1]]).unwrap()
    }

    fn mono(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn two_cycles_in_degree_four() {
        let g = ReductionGraph::build(&ternary_cyclic(), 4);
        assert_eq!(g.len(), 15);
        assert_eq!(g.cycles().len(), 2);
        for c in g.cycles() {
            assert_eq!(c.len(), 2);
            assert_eq!(c.label_counts(), &[0, 1, 1]);
        }
        assert!(g.cycles().iter().any(|c| c.vertices().contains(&mono(&[1, 1, 2]))));
        assert_eq!(g.cycle_polynomial().to_string(), "a2^2*a3^2 - 2*a2*a3*b2*b3 + b2^2*b3^2");
        assert_eq!(g.sinks().len(), 0);
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn chain_has_single_sink() {
        let g = ReductionGraph::build(&ternary_chain(), 3);
        assert_eq!(g.len(), 10);
        assert!(g.cycles().is_empty());
        let sink = g.index_of(&mono(&[1, 1, 1])).unwrap();
        assert_eq!(g.sinks(), vec![sink]);
        for v in 0..g.len() {
            assert_eq!(g.terminal(v), Terminal::Sink(sink));
        }
        assert!(g.cycle_polynomial().is_one());
        assert_eq!(g.edge_count(), 9);
    }

    #[test]
    fn binary_loop_cycle() {
        let g = ReductionGraph::build(&binary_loop(), 3);
        assert_eq!(g.len(), 4);
        assert_eq!(g.cycles().len(), 1);
        let c = &g.cycles()[0];
        assert_eq!(c.vertices(), &[mono(&[1, 2]), mono(&[2, 1])]);
        assert_eq!(c.label_counts(), &[1, 1]);
        assert_eq!(cycle_polynomial(c).to_string(), "a1*a2 - b1*b2");
        let x23 = g.index_of(&mono(&[0, 3])).unwrap();
        assert_eq!(g.class(x23), VertexClass::Transient);
    }

    #[test]
    fn shared_tail_degree_two_is_acyclic() {
        let g = ReductionGraph::build(&binary_loop(), 2);
        assert_eq!(g.len(), 3);
        assert!(g.cycles().is_empty());
        assert!(g.cycle_polynomial().is_one());
    }

    #[test]
    fn label_binomial_cases() {
        assert_eq!(label_binomial(&[2, 0, 0]).to_string(), "a1^2 - b1^2");
    }

    #[test]
    fn dot_and_json_are_deterministic() {
        let g = ReductionGraph::build(&ternary_chain(), 3);
        let dot = g.to_dot();
        assert_eq!(dot.matches(" -> ").count(), 9);
        assert!(dot.contains("\"x1*x2*x3\" [shape=box];"));
        assert_eq!(dot, ReductionGraph::build(&ternary_chain(), 3).to_dot());
        let j = g.to_json();
        assert_eq!(j["edges"].as_array().unwrap().len(), 9);
        assert_eq!(j["d"], 3);
    }

    fn arb_family() -> impl Strategy<Value = BinomialFamily> {
        (2usize..=4)
            .prop_flat_map(|n| (Just(n), prop::collection::vec(1u64..=3, n)))
            .prop_flat_map(|(n, degrees)| {
                let tails: Vec<_> = degrees
                    .iter()
                    .map(|&d| prop::sample::select(monomials_of_degree(n, d)))
                    .collect();
                (Just(degrees), tails)
            })
            .prop_filter_map("tail equals leading power", |(degrees, tails)| {
                BinomialFamily::symbolic(degrees, tails).ok()
            })
    }

    proptest! {
        #[test]
        fn structural_invariants(fam in arb_family(), extra in 0u64..3) {
            let d = fam.socle_degree() + extra;
            let g = ReductionGraph::build(&fam, d);
            prop_assert_eq!(num_bigint::BigUint::from(g.len()), count_of_degree(fam.n(), d));
            for v in 0..g.len() {
                let m = &g.vertices()[v];
                prop_assert_eq!(g.succ(v).is_none(), fam.in_basis(m));
                if let (Some(w), Some(i)) = (g.succ(v), g.label(v)) {
                    prop_assert!((0..i).all(|j| m.exponent(j) < fam.degree(j)));
                    prop_assert!(m.exponent(i) >= fam.degree(i));
                    let expect = m.checked_div(&fam.leading_power(i)).unwrap().mul(fam.tail(i));
                    prop_assert_eq!(&g.vertices()[w], &expect);
                }
                prop_assert!(g.path_from(v).len() <= g.len());
            }
            if d > fam.socle_degree() {
                prop_assert!(g.sinks().is_empty());
            }
            let mut product = SparsePoly::one(fam.n());
            for c in g.cycles() {
                let vs = c.vertices();
                prop_assert_eq!(c.label_counts().iter().sum::<u64>() as usize, vs.len());
                prop_assert!(vs.iter().all(|m| m >= &vs[0]));
                for k in 0..vs.len() {
                    let v = g.index_of(&vs[k]).unwrap();
                    prop_assert_eq!(g.class(v), VertexClass::Cyclic);
                    prop_assert_eq!(&g.vertices()[g.succ(v).unwrap()], &vs[(k + 1) % vs.len()]);
                }
                let p = cycle_polynomial(c);
                prop_assert_eq!(p.len(), 2);
                product = &product * &p;
            }
            prop_assert_eq!(g.cycle_polynomial(), product);
            let cyclic = (0..g.len()).filter(|&v| g.class(v) == VertexClass::Cyclic).count();
            prop_assert_eq!(cyclic, g.cycles().iter().map(Cycle::len).sum::<usize>());
        }
    }
}
