use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("empty diagram")]
    EmptyDiagram,
    #[error("arc numbering violation: {0}")]
    ArcNumbering(String),
    #[error("dangling arc reference: arc {0}")]
    DanglingArc(usize),
    #[error("non-closed component through arc {0}")]
    NonClosedComponent(usize),
    #[error("unknown arc {0}")]
    UnknownArc(usize),
    #[error("duplicate edge {from} -> {to} in arc graph")]
    DuplicateEdge { from: usize, to: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration cap of {0} exceeded")]
    EnumerationCap(usize),
    #[error("representation check failed at relator {0}")]
    NotARepresentation(usize),
    #[error("cannot read {0}")]
    Io(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
