//! Exact coefficient field and the graded prolongation ring.

mod balanced;
mod gaussian;
mod monomial;
mod poly;

pub use balanced::{from_balanced, to_balanced, BalancedMonomial, BalancedPoly, Grading};
pub use gaussian::{parse_rational, rational_to_string, GaussianRational};
pub use monomial::Monomial;
pub use poly::{Poly, PolyBuilder};
