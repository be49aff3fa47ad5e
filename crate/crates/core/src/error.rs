use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input that cannot be interpreted at all: unparsable text, ragged or
    /// non-square matrices, asymmetric Gram matrices, dimension mismatches.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// Well-formed input that violates an operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is singular")]
    Singular,

    /// Inputs the classification does not cover (Riemannian signature, n = 3).
    #[error("out of scope: {0}")]
    OutOfScope(String),

    /// Two flags with different orbit invariants; the message names the first
    /// invariant that differs.
    #[error("inequivalent: {0}")]
    Inequivalent(String),

    /// A floating-point witness failed its residual checks.
    #[error("witness failure: {0}")]
    WitnessFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
