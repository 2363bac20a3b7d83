use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {element} outside ground set of size {n}")]
    OutOfRange { element: usize, n: usize },

    #[error("ground set size {n} exceeds supported maximum {max}")]
    GroundSetTooLarge { n: usize, max: usize },

    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("invalid input: {0}")]
    Format(String),

    #[error("construction condition {condition} violated: {detail}")]
    Construction { condition: String, detail: String },

    #[error("lattice axioms violated: {0}")]
    InvalidLattice(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, limit: usize) -> Self {
        Error::Capacity { what: what.into(), limit }
    }

    pub(crate) fn construction(condition: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Construction { condition: condition.into(), detail: detail.into() }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::GroundSetTooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
