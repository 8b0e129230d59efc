//! The matrices `C_n`, the stabilized logarithm matrix, the finite-level
//! matrices `H_n` and growth profiling.

mod finite;
mod growth;
mod product;

pub use finite::{h_matrices, h_matrices_at_level, kernel_membership, Membership};
pub use growth::{growth_profile, GrowthProfile, GrowthSample};
pub use product::{
    c_matrix, log_matrix, log_matrix_at_root, log_matrix_with, min_depth, root_product, LogMatrixResult, StabilizationCertificate,
};

#[cfg(test)]
mod tests;
