//! Polynomial containers: dense univariate polynomials and ternary forms.

mod ternary;
mod uni;

pub use ternary::{TernaryForm, VarSpace};
pub use uni::{pow_mod, xgcd, UniPoly};
