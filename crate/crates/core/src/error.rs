use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value is infinite: {0}")]
    InfiniteValue(String),
    #[error("invalid mixture weight {weight}: {reason}")]
    InvalidWeight { weight: String, reason: String },
    #[error("no utility assigned to outcome `{0}`")]
    MissingUtility(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("operation requires regime {expected}, structure is {found}")]
    RegimeMismatch { expected: String, found: String },
    #[error("structure has no act model")]
    MissingModel,
    #[error("outcome indices must satisfy i < j < n: {0}")]
    IndexOrder(String),
    #[error("analytic rule and definitional sweep disagree: {0}")]
    AnalyticMismatch(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("zero denominator at byte {pos}")]
    ZeroDenominator { pos: usize },
    #[error("schema error at `{path}`: {msg}")]
    Schema { path: String, msg: String },
    #[error("regime violation at `{path}`: literal `{literal}` {msg}")]
    RegimeViolation {
        path: String,
        literal: String,
        msg: String,
    },
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
}
