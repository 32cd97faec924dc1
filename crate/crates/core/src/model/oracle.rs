use std::io::{Read, Write};

use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};
use rayon::prelude::*;

use super::HyperbolicMesh;
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"LCDO";
const FORMAT_VERSION: u32 = 1;

/// All-pairs shortest-path distances over the weighted mesh graph: the
/// discrete intrinsic metric `d_Ω`.
///
/// Besides the mesh edges the graph carries shortcut chords between the
/// neighbours of each vertex, added only when the geodesic chord stays inside
/// the star of that vertex. This keeps every path inside the domain while
/// cutting the metrication error of pure edge paths roughly in half.
/// Graph distances never undercut the ambient hyperbolic distance, and along
/// the radial spokes of a disk they are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct IntrinsicDistanceOracle {
    n: usize,
    dist: Vec<f64>,
    tolerance: f64,
}

impl IntrinsicDistanceOracle {
    /// One Dijkstra run per source vertex, in parallel.
    pub fn from_mesh(mesh: &HyperbolicMesh) -> Self {
        let n = mesh.len();
        let mut graph = UnGraph::<(), f64>::with_capacity(n, mesh.edges().len());
        let nodes: Vec<NodeIndex> = (0..n).map(|_| graph.add_node(())).collect();
        for &(a, b, w) in mesh.edges() {
            graph.add_edge(nodes[a], nodes[b], w);
        }
        for (a, b, w) in shortcut_chords(mesh) {
            graph.add_edge(nodes[a], nodes[b], w);
        }
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|s| {
                let reached = dijkstra(&graph, nodes[s], None, |e| *e.weight());
                let mut row = vec![f64::INFINITY; n];
                for (node, d) in reached {
                    row[node.index()] = d;
                }
                row
            })
            .collect();
        let mut dist: Vec<f64> = rows.into_iter().flatten().collect();
        // Dijkstra sums along different paths in each direction; symmetrize exactly.
        for i in 0..n {
            dist[i * n + i] = 0.0;
            for j in i + 1..n {
                let d = dist[i * n + j].min(dist[j * n + i]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        IntrinsicDistanceOracle {
            n,
            dist,
            tolerance: 1e-9,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Writes the cache: magic, format version, vertex count, tolerance, then
    /// the row-major matrix, all little endian.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&(self.n as u64).to_le_bytes())?;
        w.write_all(&self.tolerance.to_le_bytes())?;
        for d in &self.dist {
            w.write_all(&d.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::input("not an oracle cache file"));
        }
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)?;
        if u32::from_le_bytes(b4) != FORMAT_VERSION {
            return Err(Error::input("unsupported oracle cache version"));
        }
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b8)?;
        let n = u64::from_le_bytes(b8) as usize;
        r.read_exact(&mut b8)?;
        let tolerance = f64::from_le_bytes(b8);
        let mut dist = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            r.read_exact(&mut b8)?;
            dist.push(f64::from_le_bytes(b8));
        }
        Ok(IntrinsicDistanceOracle { n, dist, tolerance })
    }
}

fn klein(v: &[f64; 3]) -> [f64; 2] {
    [v[1] / v[0], v[2] / v[0]]
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn properly_cross(p: [f64; 2], q: [f64; 2], s: [f64; 2], t: [f64; 2]) -> bool {
    let eps = 1e-14;
    let (d1, d2) = (orient(p, q, s), orient(p, q, t));
    let (d3, d4) = (orient(s, t, p), orient(s, t, q));
    ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
}

fn in_triangle(x: [f64; 2], a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> bool {
    let eps = 1e-12;
    let (d1, d2, d3) = (orient(a, b, x), orient(b, c, x), orient(c, a, x));
    let neg = d1 < -eps || d2 < -eps || d3 < -eps;
    let pos = d1 > eps || d2 > eps || d3 > eps;
    !(neg && pos)
}

const CHORD_HOPS: usize = 3;

/// Chords `p-q` between vertices at most `CHORD_HOPS` edges apart whose
/// geodesic stays inside the triangulated domain. Geodesics are straight in
/// the Klein model, so the domain is a planar polygon there: a chord is kept
/// when it crosses no boundary edge, passes through no other boundary vertex
/// and has its midpoint in some triangle. Meshes without triangles get no
/// chords.
fn shortcut_chords(mesh: &HyperbolicMesh) -> Vec<(usize, usize, f64)> {
    use std::collections::{BTreeSet, HashMap};
    let n = mesh.len();
    if mesh.triangles().is_empty() {
        return Vec::new();
    }
    let k: Vec<[f64; 2]> = mesh.vertices().iter().map(klein).collect();
    let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
    for t in mesh.triangles() {
        for i in 0..3 {
            let (a, b) = (t[i], t[(i + 1) % 3]);
            *edge_count.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let walls: Vec<(usize, usize)> =
        edge_count.iter().filter(|(_, &c)| c == 1).map(|(&e, _)| e).collect();
    let mut wall_vertices: Vec<usize> = walls.iter().flat_map(|&(a, b)| [a, b]).collect();
    wall_vertices.sort_unstable();
    wall_vertices.dedup();

    let inside = |x: [f64; 2]| {
        mesh.triangles()
            .iter()
            .any(|t| in_triangle(x, k[t[0]], k[t[1]], k[t[2]]))
    };
    let visible = |p: usize, q: usize| {
        let crosses = walls.iter().any(|&(s, t)| {
            s != p && s != q && t != p && t != q && properly_cross(k[p], k[q], k[s], k[t])
        });
        if crosses {
            return false;
        }
        let (a, b) = (k[p], k[q]);
        let len2 = (b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2);
        let touches = wall_vertices.iter().any(|&w| {
            if w == p || w == q {
                return false;
            }
            let c = k[w];
            let s = ((c[0] - a[0]) * (b[0] - a[0]) + (c[1] - a[1]) * (b[1] - a[1])) / len2;
            s > 0.0 && s < 1.0 && orient(a, b, c).abs() <= 1e-12 * len2.sqrt()
        });
        !touches && inside([0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])])
    };

    let edge_count = &edge_count;
    let candidates: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|p| {
            let mut seen = BTreeSet::from([p]);
            let mut frontier = vec![p];
            for _ in 0..CHORD_HOPS {
                let mut next = Vec::new();
                for &v in &frontier {
                    for &(w, _) in mesh.neighbors(v) {
                        if seen.insert(w) {
                            next.push(w);
                        }
                    }
                }
                frontier = next;
            }
            seen.into_iter()
                .filter(move |&q| q > p && !edge_count.contains_key(&(p, q)))
                .map(move |q| (p, q))
                .collect::<Vec<_>>()
        })
        .collect();
    candidates
        .into_par_iter()
        .filter(|&(p, q)| visible(p, q))
        .map(|(p, q)| (p, q, mesh.ambient_distance(p, q)))
        .collect()
}
