//! Exact computations for families of binomials `a_i x_i^{d_i} - b_i m_i`:
//! reduction graphs, monomial rewriting with certificates, dual generators,
//! structured resultant determinants, and brute-force linear-algebra oracles.

pub mod algebra;
pub mod dual;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod graph;
pub mod lefschetz;
pub mod linalg;
pub mod oracle;
pub mod resultant;
pub mod rewrite;
pub mod selftest;

pub use algebra::{CoeffMonomial, Convention, Monomial, Poly, SparsePoly};
pub use error::Error;
pub use family::{BinomialFamily, CoeffAssignment};
