//! Truncated power series in one and two variables, finite-level group
//! rings and 2x2 matrices over them.

mod algebra;
mod conv;
mod eval;
mod group_ring;
mod mat2;
mod special;
mod trunc1;
mod trunc2;

pub use algebra::Algebra;
pub use eval::{eval_at, eval_character, reduce_to_level, Evaluation, LevelReduction, TailFloor};
pub use group_ring::GroupRingElement;
pub use mat2::Mat2;
pub use special::{cyclotomic_poly, log_one_plus, omega};
pub(crate) use special::cyclotomic_ints;
pub use trunc1::{TruncSeries1, Var};
pub use trunc2::TruncSeries2;
