//! Golden suite over the worked families: every check compares a computed
//! value against a known literal.

use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::rational::{int, random_nonzero};
use crate::algebra::{multinomial, Convention, Monomial, Poly, SparsePoly};
use crate::dual::{dual_generator, s_vector, verify_annihilation};
use crate::family::{BinomialFamily, CoeffAssignment};
use crate::fixtures::*;
use crate::graph::{label_binomial, ReductionGraph, Terminal};
use crate::lefschetz::{default_basis, hessian, random_form, slp_check};
use crate::oracle::{basis_check, hilbert_function, inverse_system_dims, is_complete_intersection, m_spans_ann_quotient};
use crate::resultant::{build_c_matrix, det_structural, radical_of_cycle_product, resultant_radical};
use crate::rewrite::{certificate, reduce_monomial, reduce_polynomial, OutcomeKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "passed": self.passed, "expected": self.expected, "actual": self.actual})
    }
}

struct Suite(Vec<Check>);

impl Suite {
    fn eq(&mut self, name: &'static str, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        self.0.push(Check {
            name,
            passed: expected == actual,
            expected,
            actual,
        });
    }
}

fn mono(e: &[u64]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn numeric(fam: &BinomialFamily, a: &[i64], b: &[i64]) -> BinomialFamily {
    let v = |x: &[i64]| x.iter().map(|&k| int(k)).collect();
    fam.specialize(&CoeffAssignment::numeric(v(a), v(b)).unwrap()).unwrap()
}

/// Random nonzero `b` with `prod b != 1`.
fn generic_b(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    loop {
        let b: Vec<BigRational> = (0..n).map(|_| random_nonzero(rng, 1000)).collect();
        if b.iter().product::<BigRational>() != BigRational::one() {
            return b;
        }
    }
}

fn at_b(form: &Poly<SparsePoly>, b: &[BigRational]) -> Poly<BigRational> {
    let n = b.len();
    let b: Vec<Option<BigRational>> = b.iter().cloned().map(Some).collect();
    form.substitute(&vec![Some(int(1)); n], &b).to_numeric().expect("only b symbols occur")
}

fn joined<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Runs every golden check; randomized inputs are drawn from `seed`.
pub fn run(seed: u64) -> Vec<Check> {
    let mut s = Suite(Vec::new());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cyc = ternary_cyclic();
    let chain = ternary_chain();

    // graph
    let g4 = ReductionGraph::build(&cyc, 4);
    s.eq("graph.cyclic.d4.vertices", 15, g4.len());
    s.eq(
        "graph.cyclic.d4.cycles",
        "2:(0,1,1);2:(0,1,1)",
        g4.cycles().iter().map(|c| format!("{}:({})", c.len(), joined(c.label_counts()))).collect::<Vec<_>>().join(";"),
    );
    s.eq("graph.cyclic.d4.cycle_polynomial", label_binomial(&[0, 1, 1]).pow(2), g4.cycle_polynomial());
    s.eq("graph.cyclic.d4.radical", "a2*a3 - b2*b3", joined(radical_of_cycle_product(&g4).iter().map(|f| &f.poly)));
    s.eq("graph.cyclic.dot.nodes", 15, g4.to_dot().lines().filter(|l| l.starts_with("  \"") && !l.contains(" -> ")).count());
    let g3 = ReductionGraph::build(&chain, 3);
    let target = g3.index_of(&mono(&[1, 1, 1])).unwrap();
    s.eq("graph.chain.d3.vertices", 10, g3.len());
    s.eq("graph.chain.d3.cycles", 0, g3.cycles().len());
    s.eq("graph.chain.d3.edges", 9, g3.edge_count());
    s.eq("graph.chain.d3.sinks", "x1*x2*x3", joined(g3.sinks().iter().map(|&v| &g3.vertices()[v])));
    s.eq("graph.chain.d3.all_reach_sink", true, (0..g3.len()).all(|v| g3.terminal(v) == Terminal::Sink(target)));
    s.eq("graph.chain.d3.cycle_polynomial", "1", g3.cycle_polynomial());

    // core algebra and family formats
    s.eq("algebra.multinomial.111", 6, multinomial(3, &[1, 1, 1]).unwrap());
    s.eq("algebra.multinomial.210", 3, multinomial(3, &[2, 1, 0]).unwrap());
    let parsed: Result<BinomialFamily, _> =
        "f1 = a1*x1^2 - b1*x1*x3 ; f2 = a2*x2^2 - b2*x2*x3 ; f3 = a3*x3^2 - b3*x2*x3".parse();
    s.eq("family.parse.cyclic", true, parsed.as_ref() == Ok(&cyc));
    let ring_a = quintic_ring_a().specialize(&unit_leading(5)).unwrap();
    s.eq(
        "family.quintic_a.unit_leading",
        "f1 = x1^2 - b1*x2*x3\nf2 = x2^2 - b2*x3*x4\nf3 = x3^2 - b3*x4*x5\nf4 = x4^2 - b4*x1*x5\nf5 = x5^2 - b5*x1*x2",
        &ring_a,
    );

    // rewrite
    let out = reduce_monomial(&chain, &mono(&[2, 1, 0]), 3);
    s.eq("reduce.chain.kind", "ToBasis", format!("{:?}", out.kind));
    s.eq("reduce.chain.basis", "x1*x2*x3", out.basis.as_ref().map(ToString::to_string).unwrap_or_default());
    s.eq("reduce.chain.coefficient", "b1^2*b2/(a1^2*a2)", out.coeff.as_ref().map(ToString::to_string).unwrap_or_default());
    s.eq("reduce.chain.labels", "1,2,1", joined(out.labels_one_based()));
    let out = reduce_monomial(&cyc, &mono(&[1, 1, 2]), 3);
    s.eq("reduce.cyclic.kind", "ToCycle", format!("{:?}", out.kind));
    s.eq("reduce.cyclic.entry", "x1*x2*x3^2", out.cycle_entry().map(ToString::to_string).unwrap_or_default());
    let unit = numeric(&chain, &[1, 1, 1], &[1, 1, 1]);
    let nf = reduce_polynomial(&unit, &Poly::term(mono(&[2, 1, 0]), int(1))).map(|r| r.normal_form.display_with("x").to_string());
    s.eq("reduce.chain.unit_polynomial", "x1*x2*x3", nf.unwrap_or_default());
    let cert = certificate(&chain, &mono(&[2, 1, 0]));
    s.eq("certificate.chain.steps", 3, cert.step_count());
    s.eq("certificate.chain.verifies", true, cert.verify(&chain));
    s.eq("certificate.chain.kind", format!("{:?}", OutcomeKind::ToBasis), format!("{:?}", cert.kind));

    // dual
    s.eq("dual.cyclic.s", "2,1,1", joined(s_vector(&cyc)));
    let fc = dual_generator(&cyc, Convention::Contraction);
    s.eq(
        "dual.cyclic.contraction",
        "a2*b1^2*b3 X1^3; a1*a2*a3*b1 X1^2*X2; a1*a2*b1*b3 X1^2*X3; a1^2*a3*b2 X1*X2^2; a1^2*a2*a3 X1*X2*X3; a1^2*a2*b3 X1*X3^2",
        fc.terms().iter().map(|(m, c)| format!("{c} {}", m.display_with("X"))).collect::<Vec<_>>().join("; "),
    );
    let fd = dual_generator(&cyc, Convention::Differentiation);
    let ratios: Vec<String> = fd
        .terms()
        .iter()
        .zip(fc.terms())
        .map(|((_, d), (_, c))| (d * &c.inverse().unwrap()).to_string())
        .collect();
    s.eq("dual.cyclic.differentiation_factors", "1,3,3,3,6,3", ratios.join(","));
    for (name, conv, f) in [
        ("dual.cyclic.annihilated.contraction", Convention::Contraction, &fc),
        ("dual.cyclic.annihilated.differentiation", Convention::Differentiation, &fd),
    ] {
        s.eq(name, true, verify_annihilation(&cyc, &f.to_poly(), conv).holds());
    }
    let zero_b = CoeffAssignment::new(vec![None; 3], vec![Some(int(0)); 3]).unwrap();
    let f0 = dual_generator(&cyc.specialize(&zero_b).unwrap(), Convention::Contraction);
    s.eq(
        "dual.cyclic.b_zero",
        "a1^2*a2*a3 X1*X2*X3",
        f0.terms().iter().map(|(m, c)| format!("{c} {}", m.display_with("X"))).collect::<Vec<_>>().join("; "),
    );
    s.eq(
        "dual.quintic_a.eleven_term_form",
        true,
        verify_annihilation(&ring_a, &quintic_ring_a_form(), Convention::Differentiation).holds(),
    );

    // resultant
    let c = build_c_matrix(&cyc);
    s.eq("resultant.cyclic.matrix_size", 15, c.size());
    s.eq("resultant.cyclic.matrix_invariants", "ok", c.check_invariants(&cyc).err().unwrap_or_else(|| "ok".into()));
    s.eq("resultant.cyclic.det", "a1^6*a2^3*a3^2*(a2*a3 - b2*b3)^2", det_structural(&cyc));
    let r = resultant_radical(&cyc, None);
    s.eq("resultant.cyclic.radical", "a1*a2*a3*(a2*a3 - b2*b3)", &r);
    s.eq("resultant.cyclic.radical_certain", true, r.all_certain());
    s.eq(
        "resultant.quintic_a.radical_unit_leading",
        "1 - b1*b2*b3*b4*b5",
        resultant_radical(&quintic_ring_a(), None).specialize(&unit_leading(5)),
    );

    // oracle
    let b = generic_b(&mut rng, 5);
    let hf = hilbert_function(&with_unit_a(&quintic_ring_a(), &b), 6).map(|h| joined(h.values()));
    s.eq("oracle.quintic_a.hilbert", "1,5,10,10,5,1,0", hf.unwrap_or_default());
    let ci = numeric(&cyc, &[1, 1, 1], &[1, 1, 2]);
    let non_ci = numeric(&cyc, &[1, 1, 1], &[1, 1, 1]);
    s.eq("oracle.cyclic.ci_point", true, is_complete_intersection(&ci).unwrap());
    s.eq("oracle.cyclic.non_ci_point", false, is_complete_intersection(&non_ci).unwrap());
    s.eq("oracle.cyclic.basis_check", true, basis_check(&ci).unwrap_or(false));
    // (1,1,1) is a common zero of the unit chain family
    s.eq("oracle.chain.unit_not_ci", false, is_complete_intersection(&unit).unwrap());
    let chain_ci = numeric(&chain, &[1, 1, 1], &[1, 1, 2]);
    s.eq("oracle.chain.basis_check", true, basis_check(&chain_ci).unwrap_or(false));
    let deg3_basis: Vec<Monomial> =
        crate::algebra::monomials_of_degree(3, 3).into_iter().filter(|m| chain_ci.in_basis(m)).collect();
    s.eq("oracle.chain.degree3_basis", "x1*x2*x3", joined(deg3_basis));
    let f55 = at_b(&quintic_ring_a_form(), &b);
    s.eq(
        "oracle.quintic_a.inverse_system",
        "1,5,10,10,5,1",
        joined(inverse_system_dims(&f55, 5, Convention::Differentiation).unwrap().values()),
    );
    let ring_b_unit = numeric(&quintic_ring_b(), &[1; 5], &[1; 5]);
    let fb = dual_generator(&ring_b_unit, Convention::Differentiation).to_numeric().unwrap();
    s.eq(
        "oracle.quintic_b.inverse_system_degenerate",
        "1,5,5,5,5,1",
        joined(inverse_system_dims(&fb, 5, Convention::Differentiation).unwrap().values()),
    );
    for (name, fam) in [("oracle.cyclic.m_spans.ci", &ci), ("oracle.cyclic.m_spans.non_ci", &non_ci)] {
        let f = dual_generator(fam, Convention::Contraction).to_numeric().unwrap();
        s.eq(name, true, m_spans_ann_quotient(fam.degrees(), &f, Convention::Contraction).unwrap());
    }
    s.eq(
        "oracle.non_ci_form.m_spans",
        false,
        m_spans_ann_quotient(&[2; 5], &non_ci_form(), Convention::Differentiation).unwrap(),
    );

    // lefschetz
    let conv = Convention::Differentiation;
    let squarefree = |k| crate::algebra::monomials_of_degree(5, k).into_iter().filter(Monomial::is_squarefree).collect::<Vec<_>>();
    let ell = random_form(&mut rng, 5);
    for (name, k, full) in [("lefschetz.quintic_a.hess1", 1, 5), ("lefschetz.quintic_a.hess2", 2, 10)] {
        let rank = hessian(&f55, k, &squarefree(k), conv).and_then(|h| h.rank_at(&ell));
        s.eq(name, full, rank.map_or(0, |r| r));
    }
    s.eq("lefschetz.quintic_a.slp", true, slp_check(&f55, 5, seed, conv).holds());
    let g = non_ci_form();
    let basis2 = default_basis(&g, 2, conv);
    s.eq("lefschetz.non_ci_form.basis2", 10, basis2.len());
    let h2 = hessian(&g, 2, &basis2, conv).unwrap();
    let deficient = (0..5).all(|_| h2.rank_at(&random_form(&mut rng, 5)).unwrap() < 10);
    s.eq("lefschetz.non_ci_form.hess2_deficient", true, deficient);
    let report = slp_check(&g, 5, seed, conv);
    s.eq("lefschetz.non_ci_form.fails_at", "2", joined(report.orders.iter().filter(|o| o.rank < o.basis_size).map(|o| o.k)));
    let monomial_dual = Poly::term(mono(&[1, 2, 1, 2]), int(1));
    s.eq("lefschetz.monomial_ci.slp", true, slp_check(&monomial_dual, 5, seed, conv).holds());
    s.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_golden_check_passes() {
        let failures: Vec<_> = run(1).into_iter().filter(|c| !c.passed).collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }
}
