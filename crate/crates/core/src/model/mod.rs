//! Spacetime backends.
//!
//! Every backend implements [`LorentzianModel`], the minimal interface the
//! `d_J`, curve and completeness code needs: a Lorentzian distance, a causal
//! test, membership, chronological boundary tests, and a chart metric used
//! for convergence checks.

mod cone;
mod hyperbolic;
mod mesh;
mod minkowski;
mod oracle;

pub use cone::{cone_distance, cone_distance_scalar, ConeModel, ConePoint, FullCone};
pub use hyperbolic::{hyperbolic_distance, minkowski_dot, on_hyperboloid, polar_point, Vec3, BASE_POINT};
pub use mesh::HyperbolicMesh;
pub use minkowski::{
    general_position_sample, grid_events, minkowski_distance, probe_cloud, slice, strip_slice, Event, EventCloud, Minkowski2,
    Strip,
};
pub use oracle::IntrinsicDistanceOracle;

use crate::causal::FiniteLorentzianSpace;

pub trait LorentzianModel: Sync {
    type Point: Clone + std::fmt::Debug + Send + Sync;

    /// Lorentzian distance `d(a, b) >= 0`; zero unless `a ≤ b`.
    fn distance(&self, a: &Self::Point, b: &Self::Point) -> f64;

    fn causal(&self, a: &Self::Point, b: &Self::Point) -> bool;

    fn contains(&self, _p: &Self::Point) -> bool {
        true
    }

    /// `I-(p) = ∅`.
    fn is_past_boundary(&self, _p: &Self::Point) -> bool {
        false
    }

    /// `I+(p) = ∅`.
    fn is_future_boundary(&self, _p: &Self::Point) -> bool {
        false
    }

    /// A size measure that diverges along curves escaping to infinity.
    fn scale(&self, p: &Self::Point) -> f64;

    /// A metric inducing the manifold topology, used for convergence tests.
    fn chart_distance(&self, a: &Self::Point, b: &Self::Point) -> f64;
}

/// Models whose points have global coordinates, so sequences of points can
/// be extrapolated to a limit candidate.
pub trait Chart: LorentzianModel {
    fn coordinates(&self, p: &Self::Point) -> Vec<f64>;

    /// The point with the given coordinates, whether or not it lies in the model.
    fn point(&self, coords: &[f64]) -> Option<Self::Point>;
}

impl Chart for Minkowski2 {
    fn coordinates(&self, p: &Event) -> Vec<f64> {
        vec![p.t, p.x]
    }

    fn point(&self, c: &[f64]) -> Option<Event> {
        (c.len() == 2).then(|| Event::new(c[0], c[1]))
    }
}

impl Chart for Strip {
    fn coordinates(&self, p: &Event) -> Vec<f64> {
        vec![p.t, p.x]
    }

    fn point(&self, c: &[f64]) -> Option<Event> {
        (c.len() == 2).then(|| Event::new(c[0], c[1]))
    }
}

impl Chart for FullCone {
    fn coordinates(&self, p: &Vec3) -> Vec<f64> {
        p.to_vec()
    }

    fn point(&self, c: &[f64]) -> Option<Vec3> {
        (c.len() == 3).then(|| [c[0], c[1], c[2]])
    }
}

impl LorentzianModel for FiniteLorentzianSpace {
    type Point = usize;

    fn distance(&self, a: &usize, b: &usize) -> f64 {
        self.dist(*a, *b)
    }

    fn causal(&self, a: &usize, b: &usize) -> bool {
        FiniteLorentzianSpace::causal(self, *a, *b)
    }

    fn contains(&self, p: &usize) -> bool {
        *p < self.len()
    }

    fn is_past_boundary(&self, p: &usize) -> bool {
        (0..self.len()).all(|y| !self.timelike(y, *p))
    }

    fn is_future_boundary(&self, p: &usize) -> bool {
        (0..self.len()).all(|y| !self.timelike(*p, y))
    }

    fn scale(&self, _p: &usize) -> f64 {
        0.0
    }

    fn chart_distance(&self, a: &usize, b: &usize) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }
}
