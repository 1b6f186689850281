//! Mirrors, the mirror reflection group `W^m_{ξ,ξ}`, the R-group `𝕽_ξ` and
//! the Knapp-Stein counts of tempered summands.

mod cfactor;
mod decomposition;
mod mirrors;

pub use cfactor::{c_factor_pole_order, root_pole_order, CFactorParams, RankOneValue};
pub use decomposition::{
    arrow_group, knapp_stein_report, rgroup_decomposition, KnappSteinReport, MirrorReflection,
    RGroupDecomposition,
};
pub use mirrors::{
    fixes, mirror_roots_principal, restricted_index, root_permutation, validate_indices,
    validate_mirror_system, MirrorRootSystem, MirrorValidation, MirrorViolation,
    RestrictedGeometry,
};
