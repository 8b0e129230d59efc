//! The sharp/flat decomposition: one-variable pairs, finite-level towers,
//! the two-variable four-fold decomposition and rank-one factorization.

pub mod gen;
mod one_var;
mod rank1;
mod tower;
mod two_var;

pub use one_var::{
    compose1, compose1_with, decompose1, decompose1_with, input_margin, IntegralityCertificate, LPair, LogSolver,
    Provenance,
};

pub use rank1::{normalize_column, rank1_factor, Rank1Factorization, Rank1Outcome};
pub use tower::{
    decompose_finite, pair_at_level, stabilize, three_term_defects, tower_from_pair, FiniteDecomposition, Root,
    StabilizedTower,
};

pub use two_var::{
    compose2, compose2_with, decompose2, decompose2_with, input_margin2, restrict_diag, FourDecomposition, FourMatrix,
};

#[cfg(test)]
mod tests;
