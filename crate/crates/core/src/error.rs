use thiserror::Error;

/// Every failure the library reports. Variants map one-to-one onto the error
/// classes of the individual operations; the CLI derives exit codes from
/// [`Error::class`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no cyclic vector found in the fixed candidate schedule")]
    CyclicSearchExhausted,
    #[error("leading polynomial does not descend to the unramified variable: {0}")]
    NondescendableLeadingPoly(String),
    #[error("leading-divisor coefficient has denominator {denominator} outside the localization")]
    CoefficientNotInA { denominator: String },
    #[error("saturation cap {cap} is below the required minimum {required}")]
    CapTooSmall { cap: usize, required: usize },
    #[error("saturation did not stabilize within {cap} steps")]
    SaturationCapReached { cap: usize },
    #[error("module is not regular")]
    NotRegular,
    #[error("exponents are not rational combinations of the symbolic constants: {0}")]
    IrrationalExponents(String),
    #[error("center {0} is not on the locus")]
    CenterNotOnLocus(String),
    #[error("required blow-up center is not rational over the constant field: {0}")]
    IrrationalCenter(String),
    #[error("embedded resolution exceeded {0} blow-ups")]
    StepLimitExceeded(usize),
    #[error("component {0} is not visible in the chart")]
    ComponentNotInChart(String),
    #[error("curve lies inside the polar locus")]
    CurveInsidePolarLocus,
    #[error("function is not of the admissible crossing shape: {0}")]
    NotSplittable(String),
    #[error("integrability violated for block {0}")]
    IntegrabilityViolation(String),
    #[error("connection is not flat")]
    NotFlat,
    #[error("matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("prerequisite failed: {0}")]
    PrerequisiteFailed(String),
    #[error("regularity routes disagree: {0}")]
    RoutesDisagree(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coarse classification of errors, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Computation,
    StepLimit,
    Prerequisite,
    Disagreement,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } | Error::InvalidInput(_) => ErrorClass::Parse,
            Error::StepLimitExceeded(_) => ErrorClass::StepLimit,
            Error::PrerequisiteFailed(_) => ErrorClass::Prerequisite,
            Error::RoutesDisagree(_) => ErrorClass::Disagreement,
            _ => ErrorClass::Computation,
        }
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
