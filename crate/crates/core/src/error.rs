use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grading order k = {0} (k must be at least 2)")]
    InvalidGrading(usize),

    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },

    #[error("invalid deformation Q = {0} (Q must be a nonzero real number)")]
    InvalidDeformation(f64),

    #[error("representation breakdown at level {level}: {detail}")]
    RepresentationBreakdown { level: usize, detail: String },

    #[error("unsupported representation: {0}")]
    UnsupportedRepresentation(String),

    #[error("grading violation: K^k differs from the identity by {0:e}")]
    GradingViolation(f64),

    #[error("singular denominator at q = −1 (q − q⁻¹ vanishes for k = 2)")]
    SingularDenominator,

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    #[error("non-real spectrum: eigenvalue {re} {im:+}i")]
    NonRealSpectrum { re: f64, im: f64 },

    #[error("syntax error at byte {offset}: found {found}, expected one of: {}", expected.join(" "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<String>,
    },

    #[error("unbound identifier `{0}`")]
    UnboundIdentifier(String),

    #[error("non-finite entry in operator `{0}`")]
    NonFinite(String),

    #[error("unknown suite `{0}` (expected quon, gwh, uqsl2 or cross)")]
    UnknownSuite(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn shape_err(expected: impl ToString, found: impl ToString) -> Error {
    Error::Shape {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
