use alloc::string::String;

/// Failures raised by the arithmetic and decomposition layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands live in different rings")]
    DescriptorMismatch,
    #[error("divisor is zero at working precision")]
    DivisionByZeroAtPrecision,
    #[error("value is indistinguishable from zero (valuation at least {lower_bound})")]
    IndistinguishableFromZero { lower_bound: crate::padic::Valuation },
    #[error("operation is not supported on this ring: {0}")]
    UnsupportedRing(&'static str),
    #[error("teichmuller lift of a zero residue")]
    ZeroResidue,
    #[error("target is not a subring along a supported direction")]
    NotASubring,
    #[error("character is not primitive")]
    NonPrimitiveCharacter,
    #[error("series caps do not match")]
    CapMismatch,
    #[error("point is outside the open unit disk")]
    NotInDisk,
    #[error("series is not reversible")]
    NotReversible,
    #[error("level zero has no projection")]
    LevelZero,
    #[error("series is zero at precision")]
    ZeroAtPrecision,
    #[error("lambda invariant reaches the cap")]
    LambdaExceedsCap,
    #[error("lambda invariant of stage {stage} reaches the cap")]
    StageLambdaExceedsCap { stage: usize },
    #[error("series admits no preparation in the requested variable order")]
    NotPreparable,
    #[error("iteration failed to stabilize")]
    NonConvergent,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("coefficient of valuation {valuation} at index {index}")]
    IntegralityViolation { index: usize, valuation: crate::padic::Valuation },
    #[error("input is not decomposable: {0}")]
    NotDecomposable(String),
    #[error("matrix is singular at level {0}")]
    SingularAtLevel(u32),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = core::result::Result<T, Error>;
