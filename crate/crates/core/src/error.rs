use std::io;

use thiserror::Error;

/// Errors raised by the library.
///
/// Verification failures are not errors: they are reported as
/// [`Violation`](crate::verifier::Violation)s.
#[derive(Debug, Error)]
pub enum Error {
    /// The input does not have the shape of a sequence for the problem.
    #[error("malformed sequence: {0}")]
    Structural(String),
    /// An argument lies outside the domain of the operation.
    #[error("{0}")]
    Domain(String),
    /// The request is well-formed but beyond what this crate supports.
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
