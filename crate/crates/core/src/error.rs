//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element does not belong to the group: {0}")]
    InvalidElement(String),
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("operation requires a nonempty region")]
    EmptyRegion,
    #[error("operation requires a nonempty family")]
    EmptyFamily,
    #[error("set must be symmetric and contain the identity")]
    NotSymmetric,
    #[error("lattice basis is singular")]
    SingularBasis,
    #[error("translates of the lattice do not cover the group: {0}")]
    NotCovering(String),
    #[error("declared periodicity fails: {0}")]
    InvalidPeriod(String),
    #[error("missing translation-boundedness witness")]
    MissingWitness,
    #[error("no window satisfies the requested bound; best bound reached: {best}")]
    NoWindowFound { best: String },
    #[error("no certificate found; best epsilon reached: {best}")]
    NoCertificate { best: String },
    #[error("unsupported operation for this group kind: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
