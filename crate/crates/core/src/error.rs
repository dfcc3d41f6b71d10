use thiserror::Error;

use crate::ring::Poly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("tower bound exceeded: h_{index} requested but the configured maximum is h_{max}")]
    TowerBound { index: u32, max: u32 },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("monomials disagree on the h3^(1/3) prefactor ({first} vs {second})")]
    MixedPrefactor { first: i32, second: i32 },

    #[error("input depends on the conjugate variable h3bar")]
    ConjugateInput,

    #[error("2x2 constraint solve has non-invertible determinant {det}")]
    SingularSolve { det: Poly },

    #[error("cross-check `{name}` failed; residue {residue}")]
    CrossCheck { name: String, residue: Poly },

    #[error("configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}
