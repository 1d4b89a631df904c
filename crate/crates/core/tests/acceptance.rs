//! Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::time::Instant;

use binomial_ci::algebra::rational::{int, random_nonzero};
use binomial_ci::algebra::{monomials_of_degree, poly_divides, Convention, Monomial, Poly, SparsePoly};
use binomial_ci::dual::{dual_generator, verify_annihilation};
use binomial_ci::fixtures::*;
use binomial_ci::graph::ReductionGraph;
use binomial_ci::lefschetz::{default_basis, hessian, random_form};
use binomial_ci::oracle::{
    basis_check, ci_hilbert_series, hilbert_function, inverse_system_dims, is_complete_intersection, m_spans_ann_quotient,
    NumericSystem,
};
use binomial_ci::resultant::{det_numeric_oracle, det_structural, radical_of_cycle_product, resultant_radical};
use binomial_ci::rewrite::{certificate, reduce_monomial, OutcomeKind};
use binomial_ci::{BinomialFamily, CoeffAssignment};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xB1C0_0000 + tag)
}

fn sym(v: &[BigRational]) -> Vec<Option<BigRational>> {
    v.iter().cloned().map(Some).collect()
}

fn cycle_polynomial_of_cyclic_family() -> Outcome {
    let g = ReductionGraph::build(&ternary_cyclic(), 4);
    let p = g.cycle_polynomial();
    let binom = &SparsePoly::a_power(&[0, 1, 1]) - &SparsePoly::b_power(&[0, 1, 1]);
    ensure(p == binom.pow(2), || format!("p(G) = {p}"))?;
    let radical: Vec<String> = radical_of_cycle_product(&g).iter().map(|f| f.poly.to_string()).collect();
    ensure(radical == ["a2*a3 - b2*b3"], || format!("radical {radical:?}"))
}

fn determinant_of_cyclic_family() -> Outcome {
    let fam = ternary_cyclic();
    let det = det_structural(&fam);
    ensure(det.to_string() == "a1^6*a2^3*a3^2*(a2*a3 - b2*b3)^2", || format!("det {det}"))?;
    let expected = SparsePoly::a_power(&[6, 3, 2]) * (&SparsePoly::a_power(&[0, 1, 1]) - &SparsePoly::b_power(&[0, 1, 1])).pow(2);
    ensure(det.expand() == expected, || "expanded determinant differs".into())?;
    let mut r = rng(2);
    for _ in 0..20 {
        let (a, b) = common::random_values(&mut r, 3, 1000);
        let oracle = det_numeric_oracle(&common::with_values(&fam, a.clone(), b.clone())).map_err(|e| e.to_string())?;
        let structural = det.evaluate(&a, &b);
        ensure(oracle == structural, || format!("at a={a:?} b={b:?}: oracle {oracle}, structural {structural}"))?;
    }
    Ok(())
}

fn radical_of_cyclic_family() -> Outcome {
    let r = resultant_radical(&ternary_cyclic(), None);
    ensure(r.to_string() == "a1*a2*a3*(a2*a3 - b2*b3)", || format!("radical {r}"))?;
    ensure(r.all_certain(), || format!("statuses {:?}", r.status()))
}

fn reduction_in_chain_family() -> Outcome {
    let fam = ternary_chain();
    let m = Monomial::new(vec![2, 1, 0]);
    let out = reduce_monomial(&fam, &m, 3);
    ensure(out.kind == OutcomeKind::ToBasis, || "not reduced to the basis".into())?;
    ensure(out.basis == Some(Monomial::new(vec![1, 1, 1])), || format!("basis {:?}", out.basis))?;
    let coeff = out.coeff.map(|c| c.to_string()).unwrap_or_default();
    ensure(coeff == "b1^2*b2/(a1^2*a2)", || format!("coefficient {coeff}"))?;
    let cert = certificate(&fam, &m);
    let residual = cert.path.residual(&fam);
    ensure(residual.is_zero(), || format!("certificate leaves {}", residual.display_with("x")))?;
    ensure(cert.verify(&fam), || "certificate does not verify".into())
}

fn dual_forms_of_cyclic_family() -> Outcome {
    let fam = ternary_cyclic();
    // term order: X1^3, X1^2X2, X1^2X3, X1X2^2, X1X2X3, X1X3^2
    let contraction = ["a2*b1^2*b3", "a1*a2*a3*b1", "a1*a2*b1*b3", "a1^2*a3*b2", "a1^2*a2*a3", "a1^2*a2*b3"];
    let differentiation = ["a2*b1^2*b3", "3*a1*a2*a3*b1", "3*a1*a2*b1*b3", "3*a1^2*a3*b2", "6*a1^2*a2*a3", "3*a1^2*a2*b3"];
    let exps: [[u64; 3]; 6] = [[3, 0, 0], [2, 1, 0], [2, 0, 1], [1, 2, 0], [1, 1, 1], [1, 0, 2]];
    for (conv, expected) in [(Convention::Contraction, contraction), (Convention::Differentiation, differentiation)] {
        let f = dual_generator(&fam, conv);
        let got: Vec<(Vec<u64>, String)> = f.terms().iter().map(|(m, c)| (m.exponents().to_vec(), c.to_string())).collect();
        let want: Vec<(Vec<u64>, String)> = exps.iter().zip(expected).map(|(e, c)| (e.to_vec(), c.to_string())).collect();
        ensure(got == want, || format!("{conv:?}: {got:?}"))?;
        ensure(verify_annihilation(&fam, &f.to_poly(), conv).holds(), || format!("{conv:?}: not annihilated"))?;
    }
    Ok(())
}

fn zero_tails() -> Outcome {
    for fam in [ternary_cyclic(), ternary_chain(), binary_loop(), quintic_ring_a(), quintic_ring_b()] {
        let n = fam.n();
        let zero_b = CoeffAssignment::new(vec![None; n], vec![Some(BigRational::zero()); n]).unwrap();
        let monomial = fam.specialize(&zero_b).unwrap();
        let f = dual_generator(&monomial, Convention::Contraction);
        let target = Monomial::new(fam.degrees().iter().map(|d| d - 1).collect());
        ensure(f.terms().len() == 1 && f.terms()[0].0 == target, || format!("dual of {fam} at b=0 has {} terms", f.terms().len()))?;
        for d in [fam.socle_degree(), fam.resultant_degree()] {
            let before = ReductionGraph::build(&fam, d).to_json();
            let after = ReductionGraph::build(&monomial, d).to_json();
            ensure(before == after, || format!("graph of {fam} in degree {d} changed at b=0"))?;
        }
        let r = resultant_radical(&fam, None).specialize(&zero_b);
        let a_all = SparsePoly::a_power(&vec![1; n]);
        ensure(r == a_all, || format!("radical at b=0 is {r}"))?;
    }
    Ok(())
}

fn quintic_rings() -> Outcome {
    let start = Instant::now();
    let mut r = rng(7);
    let ring_a = quintic_ring_a().specialize(&unit_leading(5)).unwrap();
    let form = quintic_ring_a_form();
    ensure(verify_annihilation(&ring_a, &form, Convention::Differentiation).holds(), || "eleven-term form not annihilated".into())?;
    let squarefree = |k| monomials_of_degree(5, k).into_iter().filter(Monomial::is_squarefree).collect::<Vec<_>>();
    for _ in 0..5 {
        let b: Vec<BigRational> = loop {
            let b: Vec<BigRational> = (0..5).map(|_| random_nonzero(&mut r, 1000)).collect();
            if b.iter().product::<BigRational>() != BigRational::one() {
                break b;
            }
        };
        let hf = hilbert_function(&with_unit_a(&quintic_ring_a(), &b), 6).map_err(|e| e.to_string())?;
        ensure(hf.values() == [1, 5, 10, 10, 5, 1, 0], || format!("hilbert {:?} at b={b:?}", hf.values()))?;
        let f = form.substitute(&vec![Some(int(1)); 5], &sym(&b)).to_numeric().unwrap();
        let ell = random_form(&mut r, 5);
        for (k, full) in [(1, 5), (2, 10)] {
            let h = hessian(&f, k, &squarefree(k), Convention::Differentiation).map_err(|e| e.to_string())?;
            let rank = h.rank_at(&ell).unwrap();
            ensure(rank == full, || format!("Hess^{k} rank {rank} at b={b:?}"))?;
        }
    }
    let degenerate = common::with_values(&quintic_ring_b(), vec![int(1); 5], vec![int(1); 5]);
    let fb = dual_generator(&degenerate, Convention::Differentiation).to_numeric().unwrap();
    let dims = inverse_system_dims(&fb, 5, Convention::Differentiation).map_err(|e| e.to_string())?;
    ensure(dims.values() == [1, 5, 5, 5, 5, 1], || format!("inverse system {:?}", dims.values()))?;
    ensure(start.elapsed().as_secs() <= 60, || format!("took {:?}", start.elapsed()))
}

fn non_ci_quintic() -> Outcome {
    let f = non_ci_form();
    let conv = Convention::Differentiation;
    let basis = default_basis(&f, 2, conv);
    ensure(basis.len() == 10, || format!("dim A_2 = {}", basis.len()))?;
    let h = hessian(&f, 2, &basis, conv).map_err(|e| e.to_string())?;
    let mut r = rng(8);
    for _ in 0..5 {
        let ell = random_form(&mut r, 5);
        let rank = h.rank_at(&ell).unwrap();
        ensure(rank < 10, || format!("full rank at {ell:?}"))?;
    }
    ensure(!m_spans_ann_quotient(&[2; 5], &f, conv).unwrap(), || "squarefree monomials span".into())
}

fn random_corpus() -> Vec<BinomialFamily> {
    common::ci_corpus(&mut rng(9), 30, 4, 3)
}

fn basis_theorem_on_corpus(corpus: &[BinomialFamily]) -> Outcome {
    let start = Instant::now();
    ensure(corpus.len() >= 25, || format!("only {} families", corpus.len()))?;
    ensure(corpus.iter().any(|f| f.n() == 4 && f.degrees().contains(&3)), || "no family with n = 4 and a cubic".into())?;
    for fam in corpus {
        ensure(basis_check(fam) == Ok(true), || format!("basis check fails for {fam}"))?;
        let sys = NumericSystem::from_family(fam).unwrap();
        let hf = sys.hilbert_function(fam.socle_degree());
        let expected = ci_hilbert_series(fam.degrees());
        ensure(hf.values() == expected.as_slice(), || format!("h-vector {:?} for {fam}", hf.values()))?;
        let (a, b) = fam.coefficients().values().unwrap();
        for j in 0..=fam.socle_degree() {
            let piece = sys.slice(j);
            for m in monomials_of_degree(fam.n(), j) {
                let out = reduce_monomial(fam, &m, fam.n());
                let residue = match out.kind {
                    OutcomeKind::ToBasis => {
                        let c = out.coeff.unwrap().evaluate(&a, &b).unwrap();
                        Poly::term(m.clone(), BigRational::one()).sub(&Poly::term(out.basis.unwrap(), c))
                    }
                    OutcomeKind::ToCycle => Poly::term(m.clone(), BigRational::one()),
                };
                ensure(piece.contains(&residue), || format!("{m} in {fam}: {:?} not confirmed", out.kind))?;
            }
        }
    }
    ensure(start.elapsed().as_secs() <= 300, || format!("took {:?}", start.elapsed()))
}

fn divisibility_on_corpus(corpus: &[BinomialFamily]) -> Outcome {
    for fam in corpus {
        let shape = fam.symbolic_shape();
        let g = ReductionGraph::build(&shape, shape.resultant_degree());
        let radical = radical_of_cycle_product(&g)
            .iter()
            .fold(SparsePoly::one(shape.n()), |acc, f| &acc * &f.poly);
        let det = det_structural(&shape).expand();
        ensure(poly_divides(&radical, &det) == Ok(true), || format!("{radical} does not divide |C| for {shape}"))?;
    }
    Ok(())
}

fn zero_set_of_cyclic_family() -> Outcome {
    let fam = ternary_cyclic();
    let radical = resultant_radical(&fam, None).product();
    let mut r = rng(11);
    let mut nonzero = 0;
    while nonzero < 50 {
        let (a, b) = common::random_values(&mut r, 3, 1000);
        if radical.evaluate(&a, &b).is_zero() {
            continue;
        }
        nonzero += 1;
        let point = common::with_values(&fam, a.clone(), b.clone());
        ensure(is_complete_intersection(&point).unwrap(), || format!("not CI at a={a:?} b={b:?}"))?;
    }
    for _ in 0..10 {
        let (a, mut b) = common::random_values(&mut r, 3, 1000);
        b[2] = &a[1] * &a[2] / &b[1];
        let point = common::with_values(&fam, a.clone(), b.clone());
        ensure(!is_complete_intersection(&point).unwrap(), || format!("CI on the cycle variety at a={a:?} b={b:?}"))?;
    }
    Ok(())
}

fn main() {
    let corpus = random_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("cycle polynomial and its radical, cyclic family", Box::new(cycle_polynomial_of_cyclic_family)),
        ("structural determinant vs exact elimination", Box::new(determinant_of_cyclic_family)),
        ("resultant radical with certain exponents", Box::new(radical_of_cyclic_family)),
        ("monomial reduction and certificate, chain family", Box::new(reduction_in_chain_family)),
        ("dual generator in both conventions", Box::new(dual_forms_of_cyclic_family)),
        ("zero tails collapse the dual and the radical", Box::new(zero_tails)),
        ("five-variable quadric families", Box::new(quintic_rings)),
        ("non-complete-intersection quintic form", Box::new(non_ci_quintic)),
        ("basis theorem on random complete intersections", Box::new(|| basis_theorem_on_corpus(&corpus))),
        ("radical of p(G) divides |C| on the random corpus", Box::new(|| divisibility_on_corpus(&corpus))),
        ("zero set of the radical, cyclic family", Box::new(zero_set_of_cyclic_family)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({:.2?})", k + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
