use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("permutation degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{what} exceeds budget: needs {needed}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        limit: String,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameters for `{family}`: {reason}")]
    InvalidParams { family: String, reason: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("orbit sum {sum} is not divisible by |H| = {order}")]
    DivisibilityViolation { sum: String, order: String },

    #[error("group is not semiprimitive")]
    NotSemiprimitive,

    #[error("group is primitive; no nontrivial block system")]
    Primitive,

    /// The reader of our output went away, e.g. `| head`.
    #[error("output closed")]
    OutputClosed,

    #[error("no exact method is feasible; k(G) lies in [{lower}, {upper}]")]
    Infeasible { lower: String, upper: String },
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }

    pub(crate) fn params(family: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParams {
            family: family.into(),
            reason: reason.into(),
        }
    }

    /// True for errors raised because a configured resource limit was hit.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::Infeasible { .. })
    }
}
