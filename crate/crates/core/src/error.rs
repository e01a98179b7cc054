use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FieldError {
    #[error("division by zero")]
    ZeroDivision,
    #[error("cannot invert a sum of {terms} radical terms")]
    MultiTermInverse { terms: usize },
    #[error("square root of an expression that already contains radicals")]
    NestedRadical,
    #[error("pole at q = 1")]
    PoleAtOne,
    #[error("parse error at {pos}: {message}")]
    Parse { pos: usize, message: String },
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("representation recursion inconsistent: {0}")]
    RecursionInconsistent(String),
    #[error("highest-weight vector not found for block {0}")]
    HighestWeightNotFound(String),
    #[error("orthogonality failure: {0}")]
    OrthogonalityFailure(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("relation cannot be oriented: {0}")]
    NonOrientable(String),
    #[error("no consistent relation set: {0}")]
    NoConsistentSet(String),
    #[error("covariance broken under {generator} at {m}: {difference}")]
    CovarianceBroken {
        generator: String,
        m: String,
        difference: String,
    },
    #[error("duality mismatch for {word} at entry ({row},{col})")]
    DualityMismatch { word: String, row: usize, col: usize },
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("{0}")]
    Input(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Field(FieldError::ZeroDivision) => "ZeroDivision",
            Error::Field(FieldError::MultiTermInverse { .. }) => "MultiTermInverse",
            Error::Field(FieldError::NestedRadical) => "NestedRadical",
            Error::Field(FieldError::PoleAtOne) => "PoleAtOne",
            Error::Field(FieldError::Parse { .. }) => "ParseError",
            Error::RecursionInconsistent(_) => "RecursionInconsistent",
            Error::HighestWeightNotFound(_) => "HighestWeightNotFound",
            Error::OrthogonalityFailure(_) => "OrthogonalityFailure",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonOrientable(_) => "NonOrientable",
            Error::NoConsistentSet(_) => "NoConsistentSet",
            Error::CovarianceBroken { .. } => "CovarianceBroken",
            Error::DualityMismatch { .. } => "DualityMismatch",
            Error::InvalidLabel(_) => "InvalidLabel",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::Input(_) => "InputError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
