use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A type label that is not in the supported list.
    #[error("root_datum: unsupported type `{0}`")]
    UnsupportedType(String),

    /// Suzuki and Ree labels: the endomorphism is not a Frobenius map.
    #[error("root_datum: `{0}`: F not Frobenius: out of scope")]
    NotFrobenius(String),

    /// Input rejected by a precondition of `module`.
    #[error("{module}: {msg}")]
    BadInput { module: &'static str, msg: String },

    /// An exhaustive computation would exceed its size guard.
    #[error("{module}: size guard exceeded: predicted {predicted} > limit {limit}")]
    GuardExceeded {
        module: &'static str,
        predicted: u128,
        limit: u128,
    },

    /// A mathematical identity failed to hold. Always a bug.
    #[error("{module}: invariant `{invariant}` violated: {detail}")]
    InvariantBreach {
        module: &'static str,
        invariant: &'static str,
        detail: String,
    },
}

impl Error {
    pub(crate) fn bad(module: &'static str, msg: impl Into<String>) -> Self {
        Error::BadInput {
            module,
            msg: msg.into(),
        }
    }

    pub(crate) fn breach(
        module: &'static str,
        invariant: &'static str,
        detail: impl Into<String>,
    ) -> Self {
        Error::InvariantBreach {
            module,
            invariant,
            detail: detail.into(),
        }
    }

    pub fn is_invariant_breach(&self) -> bool {
        matches!(self, Error::InvariantBreach { .. })
    }
}
