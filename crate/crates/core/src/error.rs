use thiserror::Error;

use crate::tournament::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed tournament: {0}")]
    MalformedTournament(String),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{0:?} is not an arc of the tournament")]
    NotAnArc(Arc),

    #[error("invalid vertex order: {0}")]
    InvalidOrder(String),

    #[error("arc set leaves a T-cycle in place")]
    NotAFeedbackSet,

    #[error("{0:?} is not a backward arc of the order")]
    NotBackward(Arc),

    #[error("terminal {terminal} is not in the span of {arc:?}")]
    TerminalNotInSpan { arc: Arc, terminal: usize },

    #[error("vertex order is not regular")]
    OrderNotRegular,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("budget exhausted: cannot decrement k = 0")]
    BudgetExhausted,

    #[error("order provider failure: {0}")]
    ProviderFailure(String),

    #[error("no T-feedback arc set of size <= {cap}")]
    Infeasible { cap: usize },

    #[error("instance too large: n = {n} exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("trace replay failed: {0}")]
    Replay(String),
}

pub type Result<T> = std::result::Result<T, Error>;
