//! Crate-wide error type.

use thiserror::Error;

use crate::intlin::IntLinError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("lattice is not stable under the Weyl group: {0}")]
    LatticeNotStable(String),
    #[error("label function is not Weyl-invariant: {0}")]
    LabelNotInvariant(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("inconsistency detected: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    IntLin(#[from] IntLinError),
}

/// Broad classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Guard,
    Inconsistency,
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::InvalidLattice(_) => "invalid_lattice",
            Error::LatticeNotStable(_) => "lattice_not_w0_stable",
            Error::LabelNotInvariant(_) => "label_not_invariant",
            Error::Precondition(_) => "precondition_violated",
            Error::GuardExceeded(_) => "guard_exceeded",
            Error::Inconsistent(_) => "inconsistency",
            Error::IntLin(IntLinError::DimensionMismatch(_)) => "dimension_mismatch",
            Error::IntLin(IntLinError::InvalidArgument(_)) => "invalid_argument",
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::GuardExceeded(_) => ErrorKind::Guard,
            Error::Inconsistent(_) => ErrorKind::Inconsistency,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
