use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::hyperbolic::{hyperbolic_distance, on_hyperboloid, polar_point, Vec3};
use crate::error::{Error, Result};

/// A connected triangulated domain `Ω ⊂ H²`, stored as its weighted 1-skeleton.
///
/// Edge weights are the hyperbolic lengths of the edges. Generated meshes also
/// record their triangles and their rings of constant geodesic radius
/// (innermost first); both are empty for meshes loaded from edge lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicMesh {
    vertices: Vec<Vec3>,
    edges: Vec<(usize, usize, f64)>,
    #[serde(default)]
    triangles: Vec<[usize; 3]>,
    #[serde(default)]
    rings: Vec<Vec<usize>>,
    #[serde(skip)]
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl HyperbolicMesh {
    /// Validates vertices against the hyperboloid, deduplicates edges and
    /// requires a connected graph with positive edge lengths.
    pub fn new(vertices: Vec<Vec3>, edge_pairs: &[(usize, usize)], tol: f64) -> Result<Self> {
        Self::build(vertices, edge_pairs, tol, Vec::new(), Vec::new())
    }

    fn build(
        vertices: Vec<Vec3>,
        edge_pairs: &[(usize, usize)],
        tol: f64,
        triangles: Vec<[usize; 3]>,
        rings: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::input("mesh has no vertices"));
        }
        if let Some(i) = vertices.iter().position(|v| !on_hyperboloid(v, tol)) {
            return Err(Error::input(format!("vertex {i} = {:?} is not on the future hyperboloid", vertices[i])));
        }
        let mut unique = BTreeSet::new();
        for &(a, b) in edge_pairs {
            if a >= n || b >= n {
                return Err(Error::input(format!("edge ({a}, {b}) references a missing vertex")));
            }
            if a == b {
                return Err(Error::input(format!("self loop at vertex {a}")));
            }
            unique.insert((a.min(b), a.max(b)));
        }
        let mut edges = Vec::with_capacity(unique.len());
        for (a, b) in unique {
            let w = hyperbolic_distance(&vertices[a], &vertices[b]);
            if !(w > 0.0) {
                return Err(Error::input(format!("edge ({a}, {b}) has zero length")));
            }
            edges.push((a, b, w));
        }
        let mut mesh = HyperbolicMesh {
            vertices,
            edges,
            triangles,
            rings,
            adjacency: Vec::new(),
        };
        mesh.rebuild_adjacency();
        if !mesh.is_connected() {
            return Err(Error::input("mesh graph is not connected"));
        }
        Ok(mesh)
    }

    /// Restores the adjacency lists after deserialization.
    pub fn rebuild_adjacency(&mut self) {
        let mut adjacency = vec![Vec::new(); self.vertices.len()];
        for &(a, b, w) in &self.edges {
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
        }
        self.adjacency = adjacency;
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Geodesic disk of hyperbolic `radius` around the base point.
    ///
    /// The disk is split into `3·resolution - 2` concentric rings, ring `i`
    /// carrying `6i` vertices, and consecutive rings are stitched by angle.
    /// Resolution 1 is a fan of six triangles. Six radial spokes run through
    /// vertices on every ring.
    pub fn disk(radius: f64, resolution: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::input(format!("disk radius must be positive, got {radius}")));
        }
        if resolution == 0 {
            return Err(Error::input("resolution must be at least 1"));
        }
        let ring_count = 3 * resolution - 2;
        let mut vertices = vec![polar_point(0.0, 0.0)];
        let mut rings: Vec<Vec<usize>> = vec![vec![0]];
        for i in 1..=ring_count {
            let rho = radius * i as f64 / ring_count as f64;
            let count = 6 * i;
            let start = vertices.len();
            for j in 0..count {
                vertices.push(polar_point(rho, TAU * j as f64 / count as f64));
            }
            rings.push((start..start + count).collect());
        }
        let mut triangles = Vec::new();
        for i in 1..=ring_count {
            stitch(&rings[i - 1], &rings[i], &mut triangles);
        }
        let edges = edges_of(&triangles);
        Self::build(vertices, &edges, 1e-9, triangles, rings)
    }

    /// Annulus between geodesic radii `inner` and `outer`: a nonconvex domain.
    /// Uses `2·resolution + 1` rings of `12·resolution` vertices each.
    pub fn annulus(inner: f64, outer: f64, resolution: usize) -> Result<Self> {
        if !(inner > 0.0 && outer > inner && outer.is_finite()) {
            return Err(Error::input(format!("annulus radii must satisfy 0 < inner < outer, got {inner}, {outer}")));
        }
        if resolution == 0 {
            return Err(Error::input("resolution must be at least 1"));
        }
        let ring_count = 2 * resolution + 1;
        let per_ring = 12 * resolution;
        let mut vertices = Vec::new();
        let mut rings = Vec::new();
        for i in 0..ring_count {
            let rho = inner + (outer - inner) * i as f64 / (ring_count - 1) as f64;
            let start = vertices.len();
            for j in 0..per_ring {
                vertices.push(polar_point(rho, TAU * j as f64 / per_ring as f64));
            }
            rings.push((start..start + per_ring).collect::<Vec<_>>());
        }
        let mut triangles = Vec::new();
        for i in 1..ring_count {
            stitch(&rings[i - 1], &rings[i], &mut triangles);
        }
        let edges = edges_of(&triangles);
        Self::build(vertices, &edges, 1e-9, triangles, rings)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Vec3 {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(a, b, _)| (a, b)).collect()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn rings(&self) -> &[Vec<usize>] {
        &self.rings
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adjacency[i]
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edges.iter().map(|e| e.2).fold(0.0, f64::max)
    }

    /// Ambient hyperbolic distance between two vertices.
    pub fn ambient_distance(&self, i: usize, j: usize) -> f64 {
        hyperbolic_distance(&self.vertices[i], &self.vertices[j])
    }
}

/// Triangulates the band between two closed rings by merging their angles.
/// Both rings start at angle 0 and are evenly spaced.
fn stitch(inner: &[usize], outer: &[usize], triangles: &mut Vec<[usize; 3]>) {
    let m = inner.len();
    let n = outer.len();
    if m == 1 {
        for b in 0..n {
            triangles.push([inner[0], outer[b], outer[(b + 1) % n]]);
        }
        return;
    }
    let (mut a, mut b) = (0usize, 0usize);
    while a < m || b < n {
        // advance the outer ring when its next angle (b+1)/n does not pass (a+1)/m
        let advance_outer = b < n && (a == m || (b + 1) * m <= (a + 1) * n);
        if advance_outer {
            triangles.push([inner[a % m], outer[b % n], outer[(b + 1) % n]]);
            b += 1;
        } else {
            triangles.push([inner[a % m], inner[(a + 1) % m], outer[b % n]]);
            a += 1;
        }
    }
}

fn edges_of(triangles: &[[usize; 3]]) -> Vec<(usize, usize)> {
    let mut set = BTreeSet::new();
    for t in triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            set.insert((a.min(b), a.max(b)));
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BASE_POINT;

    #[test]
    fn resolution_one_is_a_fan() {
        let m = HyperbolicMesh::disk(1.0, 1).unwrap();
        assert_eq!(m.len(), 7);
        assert_eq!(m.triangles().len(), 6);
        assert_eq!(m.edges().len(), 12);
        for &v in &m.rings()[1] {
            assert!((hyperbolic_distance(&BASE_POINT, m.vertex(v)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn disk_sizes() {
        for (res, expected) in [(2, 1 + 3 * 4 * 5), (4, 1 + 3 * 10 * 11)] {
            let m = HyperbolicMesh::disk(1.0, res).unwrap();
            assert_eq!(m.len(), expected);
            // Euler characteristic of a disk: V - E + F = 1
            let chi = m.len() as i64 - m.edges().len() as i64 + m.triangles().len() as i64;
            assert_eq!(chi, 1);
        }
    }

    #[test]
    fn edge_length_shrinks_with_resolution() {
        let coarse = HyperbolicMesh::disk(1.0, 2).unwrap().max_edge_length();
        let fine = HyperbolicMesh::disk(1.0, 4).unwrap().max_edge_length();
        assert!(fine < coarse);
    }

    #[test]
    fn annulus_is_a_band() {
        let m = HyperbolicMesh::annulus(0.5, 1.0, 2).unwrap();
        assert_eq!(m.len(), 5 * 24);
        // Euler characteristic of an annulus is 0
        let chi = m.len() as i64 - m.edges().len() as i64 + m.triangles().len() as i64;
        assert_eq!(chi, 0);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert!(HyperbolicMesh::disk(1.0, 0).is_err());
        assert!(HyperbolicMesh::disk(-1.0, 2).is_err());
        assert!(HyperbolicMesh::annulus(1.0, 0.5, 2).is_err());
        let v = vec![BASE_POINT, polar_point(1.0, 0.0), polar_point(1.0, 1.0)];
        assert!(HyperbolicMesh::new(v.clone(), &[(0, 1)], 1e-9).is_err(), "disconnected");
        assert!(HyperbolicMesh::new(vec![[2.0, 0.0, 0.0]], &[], 1e-9).is_err(), "off the hyperboloid");
        assert!(HyperbolicMesh::new(v, &[(0, 1), (1, 2), (0, 0)], 1e-9).is_err(), "self loop");
    }
}
