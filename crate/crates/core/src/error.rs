use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("axis {axis} out of range for dimension {dimension}")]
    AxisOutOfRange { axis: usize, dimension: usize },

    #[error("division by zero in `{context}`")]
    DivisionByZero { context: String },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("negative exponents are not allowed here (set allow_laurent): `{text}`")]
    LaurentNotAllowed { text: String },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("the zero vector field has no Newton polytope")]
    ZeroField,

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("singular matrix (determinant {determinant})")]
    SingularMatrix { determinant: String },

    #[error("pole at t = {t}: step denominator vanishes; try h = {suggested_h}")]
    PoleStep { t: String, suggested_h: String },

    #[error("step {step} failed: {source}")]
    StepFailed { step: usize, source: Box<Error> },

    #[error("schema violations:\n  {}", .0.join("\n  "))]
    Schema(Vec<String>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn dims(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}
