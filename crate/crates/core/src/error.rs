use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied value violates an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("{target} is not representable over the given values")]
    NotRepresentable { target: String },

    /// The data do not describe a compactification (the last essential value,
    /// equivalently the value of the last key form, is not positive).
    #[error("no compactification: {0}")]
    NotACompactification(String),

    #[error("pairs are not in normal form: {0}; normalize coordinates first")]
    NotNormalForm(String),

    /// A requested construction does not exist for these data.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An invariant that holds by theory was observed to fail. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}
