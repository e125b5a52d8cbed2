use thiserror::Error;

/// Structural errors raised while building graphs, trees and vertex sets.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("not a forest: {0}")]
    NotAForest(String),
    #[error("invalid Prüfer sequence: {0}")]
    InvalidPrufer(String),
    #[error("invalid probability {0}")]
    InvalidProbability(f64),
}

/// A malformed graph, tree or witness document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Failures of the embedding lemmas.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbedError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// The greedy procedure got stuck although its preconditions held.
    #[error("embedding procedure failed under valid preconditions: {0}")]
    Defect(String),
}
