use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("operation is undefined on the zero ring")]
    ZeroRing,
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("idempotents do not sum to one: {0}")]
    NotComplete(String),
    #[error("idempotents are not pairwise orthogonal: {0}")]
    NotOrthogonal(String),
    #[error("idempotent is not fixed by the group: {0}")]
    NotFixed(String),
    #[error("functor has no norm maps (Green functor); the product decomposition does not hold for Green functors")]
    NoNorms,
    #[error("functor is zero")]
    ZeroFunctor,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("target is not clarified for the requested subgroup family")]
    TargetNotClarified,
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("automorphism mixes decomposition factors: {0}")]
    CrossTermFound(String),
    #[error("not a chain of subgroups: {0}")]
    NotChain(String),
    #[error("search exceeded its budget of {0} nodes")]
    Timeout(u64),
}

impl Error {
    /// Stable process exit code: 1 input error, 2 axiom failure, 3 Green
    /// functor where norms are required, 4 presentation constraint, 5 search timeout.
    pub fn code(&self) -> u8 {
        match self {
            Error::VerificationFailed(_) => 2,
            Error::NoNorms => 3,
            Error::NotChain(_) => 4,
            Error::Timeout(_) => 5,
            _ => 1,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
