//! Cauchy sets of the cone model.
//!
//! A set `S_f = {f(p)·p : p ∈ Ω}` over the mesh vertices is a Cauchy set
//! exactly when `ln f` is 1-Lipschitz for `d_Ω`, and a strong one when the
//! constant is below 1. Everything here works on the vertex sample.

mod generate;
mod graph;
mod intercept;

pub use generate::{bump_violation, exp_distance_graph, lipschitz_envelope, random_strong_graph};
pub use graph::{
    achronality_check, chronologically_observing, validate_graph, AchronalityReport, CauchyGraph,
    CauchySet, GraphValidation, ObservingReport, ProbeOutcome, Side, ValidationMode,
    DEFAULT_MARGIN,
};
pub use intercept::{
    geodesic_chain, weakly_timelike_intercepting, Clause, GraphPointRef, InterceptionOutcome,
    InterceptionReport,
};
