use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("too many atoms: {count} (limit {limit})")]
    AtomLimit { count: usize, limit: usize },

    #[error("invalid universe: {0}")]
    InvalidUniverse(String),

    #[error("closure would generate {count} formulas, exceeding cap {cap}")]
    CapExceeded { count: usize, cap: usize },

    #[error("operands belong to different universes")]
    UniverseMismatch,

    #[error("operands belong to different languages")]
    LanguageMismatch,

    #[error("symbol `{0}` is not in the alphabet")]
    ForeignSymbol(String),

    #[error("vector is not in the span of the basis (residual {residual:e})")]
    NotInSpan { residual: f64 },

    #[error("unknown word `{0}`")]
    UnknownWord(String),

    #[error("namespace collision: `{0}` is used as more than one of word/aspect/atom")]
    NamespaceCollision(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("x has no logical content under L (phi(x) = {0})")]
    ZeroDenominator(f64),

    #[error("estimation failed: {0}")]
    EstimationFailed(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
