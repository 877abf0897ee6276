use thiserror::Error;

/// Errors surfaced by the library. Everything here is a bad-input or
/// resource-limit condition; internal invariant violations panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate arrow {from}->{to}")]
    DuplicateArrow { line: usize, from: usize, to: usize },
    #[error("line {line}: arrows {from}->{to} and {to}->{from} make the graph unoriented")]
    AntiParallel { line: usize, from: usize, to: usize },
    #[error("graph needs between 1 and {max} vertices, got {n}")]
    VertexCount { n: usize, max: usize },
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("invalid word literal {literal:?}: {msg}")]
    WordLiteral { literal: String, msg: String },
    #[error("letter {letter} is outside the alphabet 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("invalid generator order: {0}")]
    GenOrder(String),
    #[error("rule system: {0}")]
    RuleSystem(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("rule enumeration is capped at n = {cap}, requested n = {n}")]
    CapExceeded { n: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
