use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("arity mismatch: system uses C with {expected} arguments, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("unknown constant `{name}` for this system")]
    UnknownConstant { name: String },
    #[error("invalid path")]
    InvalidPath,
    #[error("target index {target} is smaller than Omega index {present} present in the term")]
    IndexTooSmall { target: u32, present: u32 },
    #[error("normalization step budget exceeded ({budget} steps) on `{term}`; conjectured conversion did not converge")]
    StepBudget { budget: usize, term: String },
    #[error("sum not expressible in this system: {reason}")]
    Inexpressible { reason: String },
    #[error("{0}")]
    Unsupported(String),
}
