use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,

    #[error("division by the zero rational function")]
    DivisionByZeroFunction,

    #[error("variable `{0}` is not bound by the evaluation point")]
    UnboundVariable(String),

    #[error("no shift rule for variable `{0}`")]
    MissingShiftRule(String),

    #[error("`{0}` cannot appear in an initial-condition instantiation")]
    InitialInstantiation(String),

    #[error("radicand of sqrt must be a positive integer, got {0}")]
    InvalidRadicand(i64),

    #[error("formula still contains the radical sqrt({0}); run the algebraic encoding first")]
    UnencodedRadical(u64),

    #[error("unsupported construct for this output mode: {0}")]
    UnsupportedConstruct(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid problem `{name}`: {message}")]
    InvalidProblem { name: String, message: String },

    #[error("solver `{0}` not present in the record set")]
    MissingSolver(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Csv {
        context: String,
        #[source]
        source: csv::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
