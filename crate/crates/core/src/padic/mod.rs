//! Q_p and its quadratic, unramified, cyclotomic and composite extensions.

mod element;
mod embedding;
pub mod fp;
mod frobenius;
mod gauss;
mod number;
mod ring;
mod trace;

pub use element::ExtensionElement;
pub(crate) use element::{mul_ints, reduce_full, reduce_raw};
pub use embedding::Embedding;
pub use frobenius::{frobenius, frobenius_pow, inverse_frobenius, teichmuller};
pub use gauss::{gauss_sum, primitive_root, Character, GaussSum};
pub use number::{ppow, split_p, PadicNumber};
pub use ring::{Ring, RingDescriptor, RingKind};
pub use trace::{conjugates, cyclotomic_automorphism, norm, trace, trace_norm, TraceKind};

/// Valuations: rationals normalized by `v(p) = 1`.
pub type Valuation = num_rational::Ratio<i64>;

#[cfg(test)]
mod tests;
