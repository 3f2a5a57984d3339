//! Error type shared by the whole crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while building or analyzing a surface.
///
/// `Internal` is reserved for violated invariants that indicate a bug in the
/// library itself (a rank mismatch, a twist leaving a subspace it must
/// preserve, ...); callers are expected to treat it as fatal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input text could not be parsed.
    Syntax(String),
    /// A permutation was not a bijection (repeated or out-of-range symbol).
    NonBijection(String),
    /// The pair `(h, v)` does not act transitively: the surface is not connected.
    NonTransitive(String),
    /// A direction vector was zero or not primitive.
    BadDirection(String),
    /// A matrix was rejected (wrong determinant, wrong shape, not symplectic, ...).
    BadMatrix(String),
    /// Mixed inputs from two different surfaces.
    SurfaceMismatch,
    /// The operation is not defined for this surface (e.g. spin parity with odd zeros).
    Unsupported(String),
    /// An internal consistency check failed; this is a bug, not a user error.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax(m) => write!(f, "syntax error: {m}"),
            Error::NonBijection(m) => write!(f, "not a permutation: {m}"),
            Error::NonTransitive(m) => write!(f, "surface is disconnected: {m}"),
            Error::BadDirection(m) => write!(f, "bad direction: {m}"),
            Error::BadMatrix(m) => write!(f, "bad matrix: {m}"),
            Error::SurfaceMismatch => write!(f, "cycles come from different surfaces"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

pub(crate) fn internal(msg: &str) -> Error {
    Error::Internal(String::from(msg))
}
