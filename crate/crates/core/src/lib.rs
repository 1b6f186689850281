//! Exact combinatorics of affine Hecke algebra induction data: root data and
//! labels, the Weyl groupoid and its chambers, the extended groupoid of
//! standard induction data, mirrors and R-groups, and finite-group
//! 2-cocycles with twisted group algebras.

pub mod cocycle;
pub mod error;
pub mod inductiongroupoid;
pub mod intlin;
pub mod rgroup;
pub mod rootdata;
pub mod subset;
pub mod weyl;
pub mod weylgroupoid;

pub use error::{Error, ErrorKind, Result};
pub use subset::Subset;
