use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("not a group homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: String, found: String },

    #[error("inhomogeneous element: {0}")]
    Inhomogeneous(String),

    #[error("basis certificate fails at degree {degree}: {reason}")]
    BasisCertificate { degree: i64, reason: String },

    #[error("missing certificate: {0}")]
    MissingCertificate(String),

    #[error("compatibility violated: {0}")]
    Compatibility(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("unknown catalog entry `{name}`; available: {available}")]
    UnknownEntry { name: String, available: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
