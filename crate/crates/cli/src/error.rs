use sharpflat_core::Error as CoreError;

/// Failures of a CLI run, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("self-check failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn malformed(msg: impl Into<String>) -> Self {
        CliError::Malformed(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) | CliError::Io { .. } => 4,
            CliError::Verification(_) => 1,
            CliError::Core(e) => match e {
                CoreError::NotDecomposable(_) => 2,
                CoreError::PrecisionExhausted(_)
                | CoreError::ZeroAtPrecision
                | CoreError::LambdaExceedsCap
                | CoreError::StageLambdaExceedsCap { .. }
                | CoreError::NonConvergent
                | CoreError::IndistinguishableFromZero { .. }
                | CoreError::DivisionByZeroAtPrecision => 3,
                _ => 4,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Malformed(_) => "MalformedInput",
            CliError::Io { .. } => "Io",
            CliError::Verification(_) => "VerificationFailed",
            CliError::Core(e) => match e {
                CoreError::NotDecomposable(_) => "NotDecomposable",
                CoreError::PrecisionExhausted(_) => "PrecisionExhausted",
                CoreError::InvalidParameters(_) => "InvalidParameters",
                CoreError::ZeroAtPrecision => "ZeroAtPrecision",
                CoreError::LambdaExceedsCap => "LambdaExceedsCap",
                CoreError::StageLambdaExceedsCap { .. } => "StageLambdaExceedsCap",
                CoreError::NonConvergent => "NonConvergent",
                CoreError::NotPreparable => "NotPreparable",
                CoreError::DescriptorMismatch => "DescriptorMismatch",
                CoreError::CapMismatch => "CapMismatch",
                _ => "ComputationError",
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
