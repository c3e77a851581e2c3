use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: undeclared generator {name:?}")]
    UndeclaredGenerator { line: usize, name: String },
    #[error("generator {generator:?} has non-positive weight {weight}")]
    InvalidWeight { generator: String, weight: i64 },
    #[error("invalid presentation: {0}")]
    Validation(String),
    #[error("presentation is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("word budget of {budget} exceeded while enumerating degree {degree}")]
    BudgetExceeded { degree: u64, budget: usize },
    #[error("rewriting system is truncated at degree {0}; no certified obstruction set")]
    NotComplete(u64),
    #[error("growth class {0} admits no sandwich decomposition")]
    NotLinear(String),
    #[error("expected exactly one infinite sandwich, found {0}")]
    NotMonogenicCandidate(usize),
}
