use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why an equation was found to have no solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    /// Which first-order step failed (1-based), when the equation was split
    /// into a chain of first-order equations.
    pub stage: Option<usize>,
    pub detail: String,
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.stage {
            Some(s) => write!(f, "stage {s}: {}", self.detail),
            None => f.write_str(&self.detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("fiber mismatch: {0}")]
    FiberMismatch(String),
    #[error("degree error: {0}")]
    DegreeError(String),
    #[error("exponential of a series with nonzero constant term")]
    NonNilpotentArgument,
    #[error("no solution: {0}")]
    NoSolution(Obstruction),
    #[error("initial data is not exact (d c != 0)")]
    InitialDataNotExact,
    #[error("initial data is not coexact (delta c != 0)")]
    InitialDataNotCoexact,
    #[error("initial data lies in the kernel of the connection term")]
    InitialDataInKernel,
    #[error("right-hand side is not exact (d J != 0)")]
    RhsNotExact,
    #[error("right-hand side is not antiexact")]
    RhsNotAntiexact,
    #[error("right-hand side is not anticoexact")]
    RhsNotAnticoexact,
    #[error("gauge element is not invertible at this truncation")]
    SingularGauge,
    #[error("invalid horizontal frame: {0}")]
    FrameInvalid(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("iteration did not become stationary after {0} steps")]
    NotConverged(usize),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Attaches a pipeline stage to a `NoSolution` error; other errors pass through.
    pub(crate) fn at_stage(self, stage: usize) -> Self {
        match self {
            Error::NoSolution(mut o) => {
                o.stage.get_or_insert(stage);
                Error::NoSolution(o)
            }
            e => e,
        }
    }

    /// Process exit code used by the command-line front end.
    ///
    /// | code | meaning |
    /// |------|---------|
    /// | 2 | problem file could not be parsed |
    /// | 3 | problem is inconsistent (degrees, dimensions, preconditions) |
    /// | 4 | the equation has no solution |
    /// | 5 | internal invariant violation |
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::NoSolution(_) => 4,
            Error::InvariantViolation(_) | Error::NotConverged(_) => 5,
            _ => 3,
        }
    }
}
