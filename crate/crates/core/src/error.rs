use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("Pluecker ideal needs n >= 4, got {0}")]
    PlueckerTooSmall(usize),

    #[error("generator {index} ({generator}) is not homogeneous with respect to the grading")]
    NotHomogeneous { index: usize, generator: String },

    #[error("degenerate grading: the cone over the columns has dimension {dim} < {k}")]
    DegenerateGrading { dim: usize, k: usize },

    #[error("weight {0} is not in the relative interior of the support cone")]
    WeightNotInterior(String),

    #[error("invalid symmetry: {0}")]
    InvalidSymmetry(String),

    #[error("cone is not a facet of the given cone")]
    NotAFacet,

    #[error("zero cone has no relative interior point")]
    ZeroCone,

    #[error(
        "push-forward is not integral; the generator is not homogeneous for the quotient torus"
    )]
    NonIntegralPushforward,

    #[error("at most {max} variables are supported, got {found}")]
    TooManyVariables { max: usize, found: usize },

    #[error("no fixture for n = {0}; supported values are 4, 5, 6")]
    UnsupportedFixture(usize),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
