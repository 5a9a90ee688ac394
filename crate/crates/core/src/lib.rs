//! Exact-arithmetic toolkit for chiral algebra and lattice design checks.
//!
//! Everything is computed over the rationals or the rational function field
//! in the central charge `c`, a charge split `e`, a conformal weight `h`,
//! and an ambient rank `n`. No floating point is used anywhere; results are
//! either exact rationals, exact polynomials, or truncated q-expansions with
//! exact coefficients.

pub mod designs;
pub mod error;
pub mod factor;
pub mod heisenberg;
pub mod linalg;
pub mod modeword;
pub mod mpoly;
pub mod partition;
pub mod rat;
pub mod ratfunc;
pub mod tensor;
pub mod traces;
pub mod verma;

pub use error::{CoreError, Result};
pub use mpoly::{MPoly, Var};
pub use rat::Rat;
pub use ratfunc::RatFunc;
