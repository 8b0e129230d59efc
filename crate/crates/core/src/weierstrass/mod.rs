//! Weierstrass preparation and the mu/lambda invariants in one and two
//! variables.

mod division;
mod one_var;
mod two_var;

pub use division::weierstrass_divide;
pub use one_var::{newton_invariants, prep1, Invariants, PrepFactorization};
pub use two_var::{prep2, Factor, TwoVarPrep, VariableOrder};

#[cfg(test)]
mod tests;
