use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::hyperbolic::{minkowski_dot, Vec3};
use super::{HyperbolicMesh, IntrinsicDistanceOracle, LorentzianModel};
use crate::error::{Error, Result};

/// A point of the cone `R≥0·Ω`: the apex `O` or `r·x(vertex)` with `r > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConePoint {
    Apex,
    Regular { vertex: usize, r: f64 },
}

impl ConePoint {
    /// `r = 0` gives the apex; negative or non-finite radii are rejected.
    pub fn new(vertex: usize, r: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::input(format!("cone radius must be finite and nonnegative, got {r}")));
        }
        Ok(if r == 0.0 {
            ConePoint::Apex
        } else {
            ConePoint::Regular { vertex, r }
        })
    }

    /// `|u|`, the Lorentzian norm.
    pub fn radius(&self) -> f64 {
        match self {
            ConePoint::Apex => 0.0,
            ConePoint::Regular { r, .. } => *r,
        }
    }

    pub fn vertex(&self) -> Option<usize> {
        match self {
            ConePoint::Apex => None,
            ConePoint::Regular { vertex, .. } => Some(*vertex),
        }
    }
}

/// The cone distance for radii `r_a, r_b >= 0` whose projections are `d_omega` apart.
///
/// Causality is decided in log-radius form, `ln r_b - ln r_a >= d_omega`; the
/// value is `sqrt(r_a² + r_b² - 2 r_a r_b cosh d_omega)`, evaluated as
/// `sqrt((r_b - r_a)² - 4 r_a r_b sinh²(d_omega/2))` to avoid cancellation near
/// the null cone. On a common ray it is exactly `r_b - r_a`. The apex reaches
/// every point along its ray: `d(O, x) = |x|` and `d(x, O) = 0` for `x != O`.
#[inline]
pub fn cone_distance_scalar(r_a: f64, r_b: f64, d_omega: f64) -> f64 {
    if r_a == 0.0 {
        return r_b;
    }
    if r_b == 0.0 {
        return 0.0;
    }
    if r_b.ln() - r_a.ln() < d_omega {
        return 0.0;
    }
    if d_omega == 0.0 {
        return r_b - r_a;
    }
    let s = (0.5 * d_omega).sinh();
    let diff = r_b - r_a;
    (diff * diff - 4.0 * r_a * r_b * s * s).max(0.0).sqrt()
}

/// The conical Minkowski spacetime `R≥0·Ω` over a triangulated domain, with
/// `d_Ω` the mesh graph metric.
#[derive(Debug, Clone)]
pub struct ConeModel {
    mesh: Arc<HyperbolicMesh>,
    oracle: Arc<IntrinsicDistanceOracle>,
}

impl ConeModel {
    pub fn new(mesh: HyperbolicMesh) -> Self {
        let oracle = IntrinsicDistanceOracle::from_mesh(&mesh);
        ConeModel {
            mesh: Arc::new(mesh),
            oracle: Arc::new(oracle),
        }
    }

    pub fn with_oracle(mesh: HyperbolicMesh, oracle: IntrinsicDistanceOracle) -> Result<Self> {
        if oracle.len() != mesh.len() {
            return Err(Error::input(format!(
                "oracle has {} vertices, mesh has {}",
                oracle.len(),
                mesh.len()
            )));
        }
        Ok(ConeModel {
            mesh: Arc::new(mesh),
            oracle: Arc::new(oracle),
        })
    }

    pub fn mesh(&self) -> &HyperbolicMesh {
        &self.mesh
    }

    pub fn oracle(&self) -> &IntrinsicDistanceOracle {
        &self.oracle
    }

    pub fn vertex_count(&self) -> usize {
        self.mesh.len()
    }

    #[inline]
    pub fn d_omega(&self, p: usize, q: usize) -> f64 {
        self.oracle.get(p, q)
    }

    /// Whether two models share the same mesh instance or identical meshes.
    pub fn same_domain(&self, other: &ConeModel) -> bool {
        Arc::ptr_eq(&self.mesh, &other.mesh) || *self.mesh == *other.mesh
    }

    pub fn regular(&self, vertex: usize, r: f64) -> Result<ConePoint> {
        if vertex >= self.vertex_count() {
            return Err(Error::IndexOutOfRange {
                index: vertex,
                len: self.vertex_count(),
            });
        }
        ConePoint::new(vertex, r)
    }

    fn validate(&self, p: &ConePoint) -> Result<()> {
        if let ConePoint::Regular { vertex, r } = *p {
            if vertex >= self.vertex_count() {
                return Err(Error::IndexOutOfRange {
                    index: vertex,
                    len: self.vertex_count(),
                });
            }
            if !(r > 0.0) || !r.is_finite() {
                return Err(Error::input(format!("regular cone point needs r > 0, got {r}")));
            }
        }
        Ok(())
    }

    /// Embedding into L^{1+2}: `r·x(vertex)`, the origin for the apex.
    pub fn embed(&self, p: &ConePoint) -> Vec3 {
        match *p {
            ConePoint::Apex => [0.0; 3],
            ConePoint::Regular { vertex, r } => {
                let x = self.mesh.vertex(vertex);
                [r * x[0], r * x[1], r * x[2]]
            }
        }
    }
}

/// Checked cone distance between two points of `model`.
pub fn cone_distance(model: &ConeModel, a: &ConePoint, b: &ConePoint) -> Result<f64> {
    model.validate(a)?;
    model.validate(b)?;
    Ok(model.distance(a, b))
}

impl LorentzianModel for ConeModel {
    type Point = ConePoint;

    fn distance(&self, a: &ConePoint, b: &ConePoint) -> f64 {
        match (a, b) {
            (ConePoint::Apex, _) => b.radius(),
            (_, ConePoint::Apex) => 0.0,
            (ConePoint::Regular { vertex: p, r: ra }, ConePoint::Regular { vertex: q, r: rb }) => {
                cone_distance_scalar(*ra, *rb, self.d_omega(*p, *q))
            }
        }
    }

    fn causal(&self, a: &ConePoint, b: &ConePoint) -> bool {
        match (a, b) {
            (ConePoint::Apex, _) => true,
            (_, ConePoint::Apex) => false,
            (ConePoint::Regular { vertex: p, r: ra }, ConePoint::Regular { vertex: q, r: rb }) => {
                rb.ln() - ra.ln() >= self.d_omega(*p, *q)
            }
        }
    }

    fn is_past_boundary(&self, p: &ConePoint) -> bool {
        matches!(p, ConePoint::Apex)
    }

    fn scale(&self, p: &ConePoint) -> f64 {
        p.radius()
    }

    fn chart_distance(&self, a: &ConePoint, b: &ConePoint) -> f64 {
        let (u, v) = (self.embed(a), self.embed(b));
        ((u[0] - v[0]).powi(2) + (u[1] - v[1]).powi(2) + (u[2] - v[2]).powi(2)).sqrt()
    }
}

/// The closed future cone `J+(O) ⊂ L^{1+2}`: the cone over all of H², with
/// points given in ambient coordinates.
#[derive(Debug, Clone, Copy, Default)]
pub struct FullCone;

impl FullCone {
    fn future_causal(a: &Vec3, b: &Vec3) -> Option<f64> {
        let w = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let q = minkowski_dot(&w, &w);
        (w[0] >= 0.0 && q <= 0.0).then_some(-q)
    }
}

impl LorentzianModel for FullCone {
    type Point = Vec3;

    fn distance(&self, a: &Vec3, b: &Vec3) -> f64 {
        Self::future_causal(a, b).map_or(0.0, f64::sqrt)
    }

    fn causal(&self, a: &Vec3, b: &Vec3) -> bool {
        Self::future_causal(a, b).is_some()
    }

    fn contains(&self, p: &Vec3) -> bool {
        p[0] >= 0.0 && minkowski_dot(p, p) <= 0.0
    }

    fn is_past_boundary(&self, p: &Vec3) -> bool {
        self.contains(p) && minkowski_dot(p, p) >= 0.0
    }

    fn scale(&self, p: &Vec3) -> f64 {
        (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
    }

    fn chart_distance(&self, a: &Vec3, b: &Vec3) -> f64 {
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }
}
