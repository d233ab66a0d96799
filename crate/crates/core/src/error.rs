use thiserror::Error;

/// Errors raised by the operators, evaluators and harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A grid operator needed a value outside the stored domain.
    #[error("index {index} is outside the grid domain [{lo}, {hi}]")]
    Domain { index: i64, lo: i64, hi: i64 },

    /// A summation was requested over an empty range (upper end below lower end).
    #[error("empty range: {what} requires {lower} <= {upper}")]
    EmptyRange {
        what: &'static str,
        lower: i64,
        upper: i64,
    },

    /// The evaluation point lies outside the window where a representation is valid.
    #[error("evaluation point t={t} is outside the valid window t >= {min}")]
    Window { t: i64, min: i64 },

    /// Grid input skips an index.
    #[error("grid is not contiguous: index {index} is missing (line {line})")]
    MissingIndex { index: i64, line: u64 },

    #[error("invalid order: {0}")]
    Order(String),

    /// The exact backend cannot reduce a Γ quotient to a rational number.
    #[error("unsupported normalization: {0}")]
    UnsupportedNormalization(String),

    #[error("invalid parameter: {0}")]
    Param(String),

    /// A required vanishing initial difference does not vanish.
    #[error("boundary condition violated: nabla^{k} f({a}) = {value}, expected 0")]
    Boundary { k: u32, a: i64, value: String },

    #[error("parse error{}: {msg}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    Parse { line: Option<u64>, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse {
            line: None,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
