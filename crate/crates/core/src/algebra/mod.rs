//! Exact arithmetic: monomials, coefficient monomials, sparse polynomials in
//! the coefficient symbols, polynomials in the variables, cyclotomics.

pub mod coeff;
pub mod cyclotomic;
pub mod monomial;
pub mod poly;
pub mod rational;
pub mod sparse;

pub use coeff::CoeffMonomial;
pub use cyclotomic::{cyclotomic, IntPoly};
pub use monomial::{monomials_of_degree, multinomial, Monomial};
pub use poly::{Coefficient, Convention, Poly};
pub use rational::{format_rational, parse_rational};
pub use sparse::{poly_divides, SparsePoly, SymExp};
