//! Exact integer linear algebra: Smith normal form, lattice quotients,
//! finite abelian groups, congruence solving and circle-group points.

mod abelian;
mod matrix;
mod modsnf;
mod modsolve;
pub mod rational;
mod rotation;
mod smith;

use thiserror::Error;

pub use abelian::{lattice_quotient, FiniteAbelianGroup, LatticeQuotient};
pub use matrix::IntegerMatrix;
pub use modsnf::ModEchelon;
pub use modsolve::{mod_inverse, solve_mod, verify_mod_solution, ModSolution};
pub use rotation::RationalRotation;
pub use smith::{
    integer_kernel, row_lattice_basis, row_lattice_saturation, smith_normal_form,
    SmithDecomposition,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum IntLinError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Narrows a big-integer vector, failing with a guard error on overflow.
pub(crate) fn to_i64_vec(v: &[num_bigint::BigInt]) -> crate::Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            i64::try_from(x)
                .map_err(|_| crate::Error::GuardExceeded("coordinate exceeds 64 bits".into()))
        })
        .collect()
}
