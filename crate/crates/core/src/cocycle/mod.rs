//! Finite groups, 2-cocycles with root-of-unity values, central extensions
//! and twisted group algebras.

mod cohomology;
mod extension;
mod group;
mod twisted;

pub use cohomology::{
    all_cocycles, cohomologous, h2_order, is_coboundary, klein_cocycle, restrict_cocycle,
    schur_multiplier, CoboundaryTest, H2Report, Restriction, TwoCocycle, MAX_COHOMOLOGY_ORDER,
};
pub use extension::{pullback_through_cover, CentralExtension, PullbackVerdict, MAX_LIFT_CHOICES};
pub use group::{check_homomorphism, extend_homomorphism, FiniteGroup, MAX_GROUP_ORDER};
pub use twisted::{
    irreducible_degrees, regular_classes, twisted_irreducibles, MAX_EXTENSION_ORDER,
    MAX_TWISTED_ORDER,
};
