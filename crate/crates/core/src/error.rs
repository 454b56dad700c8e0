use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Tables handed to a ring constructor violate a ring axiom.
    #[error("ring construction failed: {0}")]
    Construction(String),

    /// A configured size cap was hit. Brute-force results are never truncated.
    #[error("resource cap exceeded: {what} ({actual} > {cap})")]
    Resource {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("operands belong to different rings")]
    RingMismatch,

    /// The sufficient condition fails on the named right submodule.
    #[error("condition violated on submodule {submodule} ({stage})")]
    ConditionViolated { submodule: String, stage: String },

    /// A self-check failed. Always indicates a bug, never bad input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn resource(what: &'static str, actual: usize, cap: usize) -> Self {
        Error::Resource { what, actual, cap }
    }

    /// Short machine-readable kind tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Construction(_)
            | Error::Input(_)
            | Error::RingMismatch
            | Error::Io(_)
            | Error::Json(_) => "input",
            Error::Resource { .. } => "resource",
            Error::ConditionViolated { .. } => "condition",
            Error::DivisionByZero | Error::Internal(_) => "internal",
        }
    }
}
