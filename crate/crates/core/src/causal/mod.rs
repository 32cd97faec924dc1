//! Causal spaces, extended time separations and finite Lorentzian spaces.

mod boundary;
mod maximal;
mod random;
mod relation;
mod separation;
mod space;

pub use boundary::{compute_boundaries, BoundaryReport};
pub use maximal::{
    maximal_causal_relation, maximal_causal_relation_restricted, verify_distinguishing,
    DistanceKernel,
};
pub use random::random_weighted_poset;
pub use relation::Relation;
pub use separation::{extended_add, ExtendedTimeSeparation};
pub use space::fixtures;
pub use space::{CausalityLevel, FiniteLorentzianSpace, RelationKind, Sense};
