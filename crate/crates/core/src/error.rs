use thiserror::Error;

use crate::io::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller broke the documented contract of an operation.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An exhaustive oracle would need more work than its budget allows.
    #[error("too large for oracle: {needed} candidates exceed the budget of {budget}")]
    TooLarge { needed: u128, budget: u128 },

    #[error(transparent)]
    Parse(#[from] ParseError),

    /// Input rejected by a generator or reduction precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The MHV instance asks for more happy vertices than there are
    /// potentially happy ones.
    #[error("trivial no-instance: k = {k} exceeds the {h} potentially happy vertices")]
    TrivialNo { k: usize, h: usize },

    #[error("generation failed: {0}")]
    Generation(String),
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
