use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ErrorClass, Result};
use crate::model::{cone_distance_scalar, ConeModel, ConePoint, LorentzianModel};
use crate::Tolerance;

pub const DEFAULT_MARGIN: f64 = 0.05;

/// A radius graph `S_f` over the vertices of a cone model.
#[derive(Debug, Clone)]
pub struct CauchyGraph {
    model: ConeModel,
    f: Vec<f64>,
    ln_f: Vec<f64>,
}

impl CauchyGraph {
    pub fn new(model: ConeModel, f: Vec<f64>) -> Result<Self> {
        if f.len() != model.vertex_count() {
            return Err(Error::invariant(
                ErrorClass::MeshMismatch,
                vec![f.len(), model.vertex_count()],
                "radius vector length differs from the mesh vertex count",
            ));
        }
        if let Some(v) = f.iter().position(|&r| !(r > 0.0) || !r.is_finite()) {
            return Err(Error::invariant(
                ErrorClass::Positivity,
                vec![v],
                format!("graph radius f = {} is not positive", f[v]),
            ));
        }
        let ln_f = f.iter().map(|r| r.ln()).collect();
        Ok(CauchyGraph { model, f, ln_f })
    }

    pub fn from_log(model: ConeModel, h: &[f64]) -> Result<Self> {
        Self::new(model, h.iter().map(|v| v.exp()).collect())
    }

    pub fn constant(model: ConeModel, c: f64) -> Result<Self> {
        let n = model.vertex_count();
        Self::new(model, vec![c; n])
    }

    pub fn model(&self) -> &ConeModel {
        &self.model
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn ln_f(&self) -> &[f64] {
        &self.ln_f
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn point(&self, v: usize) -> ConePoint {
        ConePoint::Regular { vertex: v, r: self.f[v] }
    }

    pub fn points(&self) -> Vec<ConePoint> {
        (0..self.len()).map(|v| self.point(v)).collect()
    }

    pub(crate) fn check_same_domain(&self, other: &CauchyGraph) -> Result<()> {
        if self.model.same_domain(&other.model) {
            Ok(())
        } else {
            Err(Error::invariant(
                ErrorClass::MeshMismatch,
                vec![],
                "graphs live on different meshes",
            ))
        }
    }

    /// Largest vertexwise `|ln f - ln g|`.
    pub fn log_sup_distance(&self, other: &CauchyGraph) -> f64 {
        self.ln_f
            .iter()
            .zip(&other.ln_f)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A Cauchy set of the cone: a radius graph, or the apex singleton `{O}`.
#[derive(Debug, Clone)]
pub enum CauchySet {
    Apex,
    Graph(CauchyGraph),
}

impl CauchySet {
    pub fn points(&self) -> Vec<ConePoint> {
        match self {
            CauchySet::Apex => vec![ConePoint::Apex],
            CauchySet::Graph(g) => g.points(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationMode {
    Cauchy,
    Strong,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphValidation {
    pub valid: bool,
    pub mode: ValidationMode,
    pub margin: f64,
    /// Lipschitz bound that was enforced: 1 or `1 - margin`.
    pub bound: f64,
    /// Largest `|ln f(p) - ln f(q)| / d_Ω(p,q)` over vertex pairs.
    pub worst_ratio: f64,
    pub worst_pair: Option<(usize, usize)>,
}

/// All-pairs log-Lipschitz test. A pair passes when
/// `|ln f(p) - ln f(q)| <= bound · d_Ω(p,q) + tol`.
pub fn validate_graph(
    g: &CauchyGraph,
    mode: ValidationMode,
    margin: f64,
    tol: Tolerance,
) -> Result<GraphValidation> {
    if !(0.0..1.0).contains(&margin) {
        return Err(Error::input(format!("margin {margin} outside [0,1)")));
    }
    let bound = match mode {
        ValidationMode::Cauchy => 1.0,
        ValidationMode::Strong => 1.0 - margin,
    };
    let n = g.len();
    let ln_f = g.ln_f();
    let model = g.model();
    let (valid, worst_ratio, worst_pair) = (0..n)
        .into_par_iter()
        .map(|p| {
            let mut ok = true;
            let mut worst = (0.0f64, None);
            for q in p + 1..n {
                let d = model.d_omega(p, q);
                let diff = (ln_f[p] - ln_f[q]).abs();
                if diff > bound * d + tol.value() {
                    ok = false;
                }
                let ratio = if d > 0.0 {
                    diff / d
                } else if diff > 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                };
                if ratio > worst.0 {
                    worst = (ratio, Some((p, q)));
                }
            }
            (ok, worst.0, worst.1)
        })
        .reduce(
            || (true, 0.0, None),
            |a, b| {
                let (w, pair) = if b.1 > a.1 || (b.1 == a.1 && a.2.is_none()) { (b.1, b.2) } else { (a.1, a.2) };
                (a.0 && b.0, w, pair)
            },
        );
    Ok(GraphValidation {
        valid,
        mode,
        margin,
        bound,
        worst_ratio,
        worst_pair,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AchronalityReport {
    pub achronal: bool,
    /// Largest `d(y_p, y_q)` over ordered vertex pairs, i.e. `d_J(S_f, S_f)`.
    pub max_distance: f64,
    /// `(p, q)` with `y_p ≪ y_q` realizing the maximum, when it exceeds the tolerance.
    pub witness: Option<(usize, usize)>,
}

/// Checks that no two graph points are timelike related.
pub fn achronality_check(g: &CauchyGraph, tol: Tolerance) -> AchronalityReport {
    let n = g.len();
    let (f, ln_f, model) = (g.f(), g.ln_f(), g.model());
    let (max_distance, pair) = (0..n)
        .into_par_iter()
        .map(|p| {
            let mut best = (0.0f64, (p, p));
            for q in 0..n {
                let d_omega = model.d_omega(p, q);
                if ln_f[q] - ln_f[p] >= d_omega && q != p {
                    let d = cone_distance_scalar(f[p], f[q], d_omega);
                    if d > best.0 {
                        best = (d, (p, q));
                    }
                }
            }
            best
        })
        .reduce(|| (0.0, (0, 0)), |a, b| if b.0 > a.0 { b } else { a });
    let achronal = tol.is_zero(max_distance);
    AchronalityReport {
        achronal,
        max_distance,
        witness: (!achronal).then_some(pair),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// The probe lies in `I+(S)`: some graph point is in its timelike past.
    Below,
    /// The probe lies in `I-(S)`.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeOutcome {
    pub probe: ConePoint,
    /// Which side the observing graph point is on, if any.
    pub observed_from: Option<Side>,
    pub witness_vertex: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ObservingReport {
    pub observing: bool,
    pub outcomes: Vec<ProbeOutcome>,
    pub first_failure: Option<usize>,
}

/// For each probe off the graph, looks for a graph point timelike related to
/// it, trying the probe's own ray first.
pub fn chronologically_observing(
    g: &CauchyGraph,
    probes: &[ConePoint],
    tol: Tolerance,
) -> Result<ObservingReport> {
    let model = g.model();
    for (i, probe) in probes.iter().enumerate() {
        if let ConePoint::Regular { vertex, r } = *probe {
            if vertex >= g.len() || !(r > 0.0) {
                return Err(Error::input(format!("probe {i} is not a point of the cone")));
            }
            if tol.is_zero(r.ln() - g.ln_f()[vertex]) {
                return Err(Error::input(format!("probe {i} lies on the graph")));
            }
        }
    }
    let outcomes: Vec<ProbeOutcome> = probes
        .par_iter()
        .map(|probe| {
            let order: Vec<usize> = match probe.vertex() {
                Some(v) => std::iter::once(v).chain((0..g.len()).filter(|&w| w != v)).collect(),
                None => (0..g.len()).collect(),
            };
            for v in order {
                let y = g.point(v);
                if model.distance(&y, probe) > tol.value() {
                    return ProbeOutcome { probe: *probe, observed_from: Some(Side::Below), witness_vertex: Some(v) };
                }
                if model.distance(probe, &y) > tol.value() {
                    return ProbeOutcome { probe: *probe, observed_from: Some(Side::Above), witness_vertex: Some(v) };
                }
            }
            ProbeOutcome { probe: *probe, observed_from: None, witness_vertex: None }
        })
        .collect();
    let first_failure = outcomes.iter().position(|o| o.observed_from.is_none());
    Ok(ObservingReport {
        observing: first_failure.is_none(),
        outcomes,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::{bump_violation, exp_distance_graph};
    use crate::model::HyperbolicMesh;

    fn model() -> ConeModel {
        ConeModel::new(HyperbolicMesh::disk(1.0, 2).unwrap())
    }

    #[test]
    fn positivity_and_length_are_enforced() {
        let m = model();
        let n = m.vertex_count();
        let mut f = vec![1.0; n];
        f[3] = 0.0;
        let err = CauchyGraph::new(m.clone(), f).unwrap_err();
        assert_eq!(err.class(), ErrorClass::Positivity);
        assert_eq!(err.witness(), &[3]);
        let err = CauchyGraph::new(m, vec![1.0; n + 1]).unwrap_err();
        assert_eq!(err.class(), ErrorClass::MeshMismatch);
    }

    #[test]
    fn constant_graphs_are_valid_in_both_modes() {
        let g = CauchyGraph::constant(model(), 2.0).unwrap();
        for mode in [ValidationMode::Cauchy, ValidationMode::Strong] {
            let v = validate_graph(&g, mode, DEFAULT_MARGIN, Tolerance::DEFAULT).unwrap();
            assert!(v.valid);
            assert_eq!(v.worst_ratio, 0.0);
        }
        assert!(achronality_check(&g, Tolerance::DEFAULT).achronal);
    }

    #[test]
    fn exponential_distance_graph_is_cauchy_not_strong() {
        let g = exp_distance_graph(model(), 0, 1.0).unwrap();
        let cauchy = validate_graph(&g, ValidationMode::Cauchy, DEFAULT_MARGIN, Tolerance::DEFAULT).unwrap();
        assert!(cauchy.valid);
        assert!((cauchy.worst_ratio - 1.0).abs() < 1e-9);
        let strong = validate_graph(&g, ValidationMode::Strong, DEFAULT_MARGIN, Tolerance::DEFAULT).unwrap();
        assert!(!strong.valid);
    }

    #[test]
    fn bumped_vertex_is_reported() {
        let m = model();
        let base = CauchyGraph::constant(m, 1.0).unwrap();
        let (g, v, w) = bump_violation(&base, 7, 1.5).unwrap();
        let val = validate_graph(&g, ValidationMode::Cauchy, 0.0, Tolerance::DEFAULT).unwrap();
        assert!(!val.valid);
        let (p, q) = val.worst_pair.unwrap();
        assert!(p == v || q == v, "worst pair {p},{q} misses bumped vertex {v} (neighbour {w})");
        let ach = achronality_check(&g, Tolerance::DEFAULT);
        assert!(!ach.achronal);
        let (a, b) = ach.witness.unwrap();
        assert!(g.model().distance(&g.point(a), &g.point(b)) > 0.0);
    }

    #[test]
    fn radial_probes_are_observed() {
        let g = CauchyGraph::constant(model(), 1.5).unwrap();
        let probes = vec![
            ConePoint::Regular { vertex: 4, r: 3.0 },
            ConePoint::Regular { vertex: 4, r: 0.75 },
            ConePoint::Apex,
        ];
        let rep = chronologically_observing(&g, &probes, Tolerance::DEFAULT).unwrap();
        assert!(rep.observing);
        assert_eq!(rep.outcomes[0].observed_from, Some(Side::Below));
        assert_eq!(rep.outcomes[0].witness_vertex, Some(4));
        assert_eq!(rep.outcomes[1].observed_from, Some(Side::Above));
        assert_eq!(rep.outcomes[2].observed_from, Some(Side::Above));
        let on_graph = [ConePoint::Regular { vertex: 4, r: 1.5 }];
        assert!(chronologically_observing(&g, &on_graph, Tolerance::DEFAULT).is_err());
    }

    #[test]
    fn probes_near_a_null_graph_are_observed_along_their_ray() {
        let m = model();
        let g = exp_distance_graph(m.clone(), 0, 1.0).unwrap();
        let rim = *m.mesh().rings().last().unwrap().first().unwrap();
        let r = g.f()[rim];
        let probes = [
            ConePoint::Regular { vertex: rim, r: r * (1.0 + 1e-6) },
            ConePoint::Regular { vertex: rim, r: r * (1.0 - 1e-6) },
        ];
        let rep = chronologically_observing(&g, &probes, Tolerance::new(1e-15).unwrap()).unwrap();
        assert!(rep.observing);
        assert!(rep.outcomes.iter().all(|o| o.witness_vertex == Some(rim)));
    }
}
