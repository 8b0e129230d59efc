//! Precision-tracked p-adic arithmetic for supersingular Iwasawa theory.
//!
//! The crate is `no_std` with `alloc`. Every value carries its own absolute
//! p-adic precision and every operation propagates it.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod decompose;
pub mod error;
pub mod honda;
pub mod linalg;
pub mod logmatrix;
pub mod padic;
pub mod series;
pub mod weierstrass;

pub use error::{Error, Result};
pub use padic::{ExtensionElement, PadicNumber, RingDescriptor, RingKind, Valuation};
