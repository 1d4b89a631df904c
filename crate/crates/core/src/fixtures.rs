//! Worked families and dual forms used by the golden suite, the CLI and the tests.

use num_rational::BigRational;

use crate::algebra::rational::int;
use crate::algebra::{Monomial, Poly, SparsePoly};
use crate::family::{parse_polynomial, BinomialFamily, CoeffAssignment};

fn family(degrees: &[u64], tails: &[&[u64]]) -> BinomialFamily {
    BinomialFamily::from_exponents(degrees, tails).expect("fixture family is valid")
}

/// `a1 x1^2 - b1 x1x3, a2 x2^2 - b2 x2x3, a3 x3^2 - b3 x2x3`: two 2-cycles in degree 4.
pub fn ternary_cyclic() -> BinomialFamily {
    family(&[2, 2, 2], &[&[1, 0, 1], &[0, 1, 1], &[0, 1, 1]])
}

/// `a1 x1^2 - b1 x1x2, a2 x2^2 - b2 x1x3, a3 x3^2 - b3 x1^2`: acyclic in degree 3.
pub fn ternary_chain() -> BinomialFamily {
    family(&[2, 2, 2], &[&[1, 1, 0], &[1, 0, 1], &[2, 0, 0]])
}

/// `a1 x1^2 - b1 x1x2, a2 x2^2 - b2 x1x2`.
pub fn binary_loop() -> BinomialFamily {
    family(&[2, 2], &[&[1, 1], &[1, 1]])
}

/// Quadrics `x_i^2 - b_i m_i` with tails `x2x3, x3x4, x4x5, x1x5, x1x2`.
pub fn quintic_ring_a() -> BinomialFamily {
    family(
        &[2; 5],
        &[&[0, 1, 1, 0, 0], &[0, 0, 1, 1, 0], &[0, 0, 0, 1, 1], &[1, 0, 0, 0, 1], &[1, 1, 0, 0, 0]],
    )
}

/// Quadrics `x_i^2 - b_i m_i` with tails `x2x5, x1x3, x2x4, x3x5, x1x4`.
pub fn quintic_ring_b() -> BinomialFamily {
    family(
        &[2; 5],
        &[&[0, 1, 0, 0, 1], &[1, 0, 1, 0, 0], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 1], &[1, 0, 0, 1, 0]],
    )
}

/// `a_i := 1` with every `b` symbolic.
pub fn unit_leading(n: usize) -> CoeffAssignment {
    CoeffAssignment::new(vec![Some(int(1)); n], vec![None; n]).expect("lengths match")
}

/// The given family with all `a_i = 1` and the given `b`.
pub fn with_unit_a(fam: &BinomialFamily, b: &[BigRational]) -> BinomialFamily {
    let n = fam.n();
    let assign = CoeffAssignment::numeric(vec![int(1); n], b.to_vec()).expect("lengths match");
    fam.specialize(&assign).expect("a_i = 1 is nonzero")
}

/// Eleven-term dual form of [`quintic_ring_a`] at `a = 1`, under differentiation,
/// with coefficients in the `b` symbols.
pub fn quintic_ring_a_form() -> Poly<SparsePoly> {
    let n = 5;
    let rows: [(i64, [u64; 5], [u64; 5]); 11] = [
        (1, [1, 0, 1, 0, 0], [3, 0, 2, 0, 0]),
        (2, [0, 0, 1, 0, 0], [1, 1, 3, 0, 0]),
        (1, [0, 1, 0, 1, 0], [0, 3, 0, 2, 0]),
        (1, [1, 0, 0, 1, 0], [2, 0, 0, 3, 0]),
        (2, [0, 0, 0, 1, 0], [0, 1, 1, 3, 0]),
        (2, [0, 1, 0, 0, 0], [1, 3, 0, 0, 1]),
        (2, [1, 0, 0, 0, 0], [3, 0, 0, 1, 1]),
        (12, [0, 0, 0, 0, 0], [1, 1, 1, 1, 1]),
        (1, [0, 0, 1, 0, 1], [0, 0, 3, 0, 2]),
        (1, [0, 1, 0, 0, 1], [0, 2, 0, 0, 3]),
        (2, [0, 0, 0, 0, 1], [0, 0, 1, 1, 3]),
    ];
    Poly::from_terms(
        n,
        rows.iter()
            .map(|(c, b, x)| (Monomial::new(x.to_vec()), SparsePoly::b_power(b).scale(&int(*c)))),
    )
}

/// A quintic whose apolar algebra has the complete-intersection Hilbert
/// function of five quadrics but is not a complete intersection.
pub fn non_ci_form() -> Poly<BigRational> {
    parse_polynomial("X1*X3^3*X4 + X2*X3*X4^3 + X2^2*X5^3", 5).expect("fixture form parses")
}
