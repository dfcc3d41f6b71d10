//! Exact symbolic engine for the canonical `sl(3,ℂ)[[λ]]`-valued formal
//! Killing fields of the minimal Lagrangian system.
//!
//! The crate is layered bottom-up:
//!
//! * [`ring`]: Gaussian-rational coefficients, sparse polynomials in the
//!   prolongation variables and their balanced (`z_j`) form.
//! * [`derivations`]: total derivatives `∂_ξ`, `∂_ξ̄` and the `T_j` table.
//! * [`loop_matrix`]: λ-series, the 3×3 Killing matrix, `det` and `σ₂`.
//! * [`killing`]: the period-6 recursion for `X(p⁴)` and `X(a⁵)`.
//! * [`verifier`]: Jacobi, characteristic-polynomial, conservation and
//!   lattice checks, plus the even-order obstruction determinant.

pub mod derivations;
pub mod error;
pub mod killing;
pub mod loop_matrix;
pub mod ring;
pub mod verifier;

pub use derivations::{Prolongation, TjMethod};
pub use error::{Error, Result};
pub use killing::{Ansatz, Engine, KillingState};
pub use loop_matrix::{Component, KillingComponents, LambdaSeries};
pub use ring::{BalancedMonomial, BalancedPoly, GaussianRational, Monomial, Poly};
pub use verifier::{CheckKind, CheckReport, CheckStatus, JacobiKind, Scope, Verifier};
