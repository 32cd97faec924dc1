use serde::{Deserialize, Serialize};

use super::{dj_graphs, dj_set};
use crate::cauchy::{validate_graph, CauchyGraph, GraphValidation, ValidationMode};
use crate::error::{Error, Result};
use crate::extrapolate::limit_from;
use crate::model::{slice, Event, LorentzianModel, Minkowski2, Strip};
use crate::Tolerance;

/// Number of trailing terms examined: a quarter of the prefix, at least two.
fn tail_len(n: usize) -> usize {
    (n / 4).max(2).min(n)
}

/// Largest pairwise value over the tail, with its (absolute) index pair.
fn tail_sup(n: usize, first_index: usize, value: impl Fn(usize, usize) -> Result<f64>) -> Result<(f64, usize, usize)> {
    let start = n - tail_len(n);
    let mut best = (0.0, first_index + start, first_index + start);
    for i in start..n {
        for j in i + 1..n {
            let v = value(i, j)?;
            if v > best.0 {
                best = (v, first_index + i, first_index + j);
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone)]
pub enum GraphLimitOutcome {
    Converged {
        limit: CauchyGraph,
        tail_sup: f64,
        /// Largest `d_J` between a tail term and the limit.
        tail_to_limit: f64,
        validation: GraphValidation,
    },
    /// The tail is not `epsilon`-Cauchy; `(i, j)` are the sequence indices of
    /// the pair with the largest `d_J`.
    NotCauchy { i: usize, j: usize, value: f64 },
    /// The vertexwise limit degenerates to the apex at `vertex`.
    BoundaryEscape { vertex: usize, value: f64 },
    /// The extrapolated limit is farther than `epsilon` from tail term `index`.
    Unverified { index: usize, value: f64 },
}

/// Limit of the graph sequence `S_{f_k}`, `k = first_index, ...`.
///
/// The tail must be `epsilon`-Cauchy in `d_J`; the limit radius at each
/// vertex is extrapolated from the iterates, must stay positive, and must lie
/// within `epsilon` of every tail term.
pub fn limit_of_graph_sequence(
    graphs: &[CauchyGraph],
    first_index: usize,
    epsilon: f64,
    tol: Tolerance,
) -> Result<GraphLimitOutcome> {
    let n = graphs.len();
    if n < 2 || first_index == 0 {
        return Err(Error::input("a sequence needs at least two terms and indices from 1"));
    }
    for g in &graphs[1..] {
        graphs[0].check_same_domain(g)?;
    }
    let (sup, i, j) = tail_sup(n, first_index, |a, b| Ok(dj_graphs(&graphs[a], &graphs[b], tol)?.value))?;
    if sup > epsilon {
        return Ok(GraphLimitOutcome::NotCauchy { i, j, value: sup });
    }
    let vertices = graphs[0].len();
    let mut f = Vec::with_capacity(vertices);
    for v in 0..vertices {
        let column: Vec<f64> = graphs.iter().map(|g| g.f()[v]).collect();
        let est = limit_from(&column, first_index).ok_or_else(|| Error::input("non-finite radius"))?;
        if !(est.value > tol.value()) {
            return Ok(GraphLimitOutcome::BoundaryEscape { vertex: v, value: est.value });
        }
        f.push(est.value);
    }
    let limit = CauchyGraph::new(graphs[0].model().clone(), f)?;
    let start = n - tail_len(n);
    let mut tail_to_limit: f64 = 0.0;
    for (k, g) in graphs.iter().enumerate().skip(start) {
        let v = dj_graphs(g, &limit, tol)?.value;
        if v > epsilon {
            return Ok(GraphLimitOutcome::Unverified { index: first_index + k, value: v });
        }
        tail_to_limit = tail_to_limit.max(v);
    }
    let validation = validate_graph(&limit, ValidationMode::Cauchy, 0.0, tol)?;
    Ok(GraphLimitOutcome::Converged { limit, tail_sup: sup, tail_to_limit, validation })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceSpace {
    Strip,
    Minkowski,
}

impl SliceSpace {
    fn contains_time(self, t: f64) -> bool {
        match self {
            SliceSpace::Strip => t > 0.0 && t < 1.0,
            SliceSpace::Minkowski => t.is_finite(),
        }
    }

    fn dj(self, a: &[Event], b: &[Event], tol: Tolerance) -> Result<f64> {
        Ok(match self {
            SliceSpace::Strip => dj_set(&Strip, a, b, tol)?.value,
            SliceSpace::Minkowski => dj_set(&Minkowski2, a, b, tol)?.value,
        })
    }

    pub fn contains(self, e: &Event) -> bool {
        match self {
            SliceSpace::Strip => Strip.contains(e),
            SliceSpace::Minkowski => Minkowski2.contains(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase", tag = "verdict")]
pub enum SliceLimitOutcome {
    Converged { t: f64, tail_sup: f64, tail_to_limit: f64 },
    NotCauchy { i: usize, j: usize, value: f64 },
    /// The tail is Cauchy but the limit slice leaves the spacetime.
    BoundaryEscape { t: f64, tail_sup: f64 },
    Unverified { index: usize, value: f64 },
}

/// Limit of the slice sequence `S_{t_k}` sampled on a common x-grid.
pub fn limit_of_slice_sequence(
    space: SliceSpace,
    ts: &[f64],
    first_index: usize,
    x_range: (f64, f64),
    samples: usize,
    epsilon: f64,
    tol: Tolerance,
) -> Result<SliceLimitOutcome> {
    let n = ts.len();
    if n < 2 || first_index == 0 {
        return Err(Error::input("a sequence needs at least two terms and indices from 1"));
    }
    if let Some(t) = ts.iter().find(|t| !space.contains_time(**t)) {
        return Err(Error::input(format!("slice parameter {t} outside the spacetime")));
    }
    let slices: Vec<Vec<Event>> = ts.iter().map(|&t| slice(t, x_range, samples)).collect::<Result<_>>()?;
    let (sup, i, j) = tail_sup(n, first_index, |a, b| space.dj(&slices[a], &slices[b], tol))?;
    if sup > epsilon {
        return Ok(SliceLimitOutcome::NotCauchy { i, j, value: sup });
    }
    let t = limit_from(ts, first_index).ok_or_else(|| Error::input("non-finite slice parameter"))?.value;
    if !space.contains_time(t) {
        return Ok(SliceLimitOutcome::BoundaryEscape { t, tail_sup: sup });
    }
    let limit = slice(t, x_range, samples)?;
    let mut tail_to_limit: f64 = 0.0;
    for k in n - tail_len(n)..n {
        let v = space.dj(&slices[k], &limit, tol)?;
        if v > epsilon {
            return Ok(SliceLimitOutcome::Unverified { index: first_index + k, value: v });
        }
        tail_to_limit = tail_to_limit.max(v);
    }
    Ok(SliceLimitOutcome::Converged { t, tail_sup: sup, tail_to_limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::lipschitz_envelope;
    use crate::model::{ConeModel, HyperbolicMesh};

    fn inverse_sequence() -> Vec<f64> {
        (2..=64).map(|j| 1.0 / j as f64).collect()
    }

    #[test]
    fn strip_sequence_escapes_through_the_boundary() {
        let out = limit_of_slice_sequence(SliceSpace::Strip, &inverse_sequence(), 2, (-1.0, 1.0), 21, 0.01, Tolerance::DEFAULT)
            .unwrap();
        match out {
            SliceLimitOutcome::BoundaryEscape { t, tail_sup } => {
                assert!(t.abs() < 1e-12);
                assert!((tail_sup - (1.0 / 50.0 - 1.0 / 64.0)).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn minkowski_sequence_converges_to_the_zero_slice() {
        let out = limit_of_slice_sequence(SliceSpace::Minkowski, &inverse_sequence(), 2, (-1.0, 1.0), 21, 0.05, Tolerance::DEFAULT)
            .unwrap();
        match out {
            SliceLimitOutcome::Converged { t, .. } => {
                let lim = slice(t, (-1.0, 1.0), 21).unwrap();
                let zero = slice(0.0, (-1.0, 1.0), 21).unwrap();
                assert!(dj_set(&Minkowski2, &lim, &zero, Tolerance::DEFAULT).unwrap().value <= 1e-6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_cauchy_sequences_report_the_pair() {
        let ts: Vec<f64> = (1..=12).map(|k| if k % 2 == 0 { 0.2 } else { 0.7 }).collect();
        let out = limit_of_slice_sequence(SliceSpace::Strip, &ts, 1, (0.0, 1.0), 5, 0.01, Tolerance::DEFAULT).unwrap();
        assert!(matches!(out, SliceLimitOutcome::NotCauchy { value, .. } if (value - 0.5).abs() < 1e-12));
    }

    #[test]
    fn constant_graph_sequence_converges() {
        let m = ConeModel::new(HyperbolicMesh::disk(1.0, 2).unwrap());
        let graphs: Vec<CauchyGraph> = (1..=30)
            .map(|k| CauchyGraph::constant(m.clone(), 1.0 + 0.5f64.powi(k)).unwrap())
            .collect();
        match limit_of_graph_sequence(&graphs, 1, 1e-3, Tolerance::DEFAULT).unwrap() {
            GraphLimitOutcome::Converged { limit, tail_to_limit, validation, .. } => {
                assert!(limit.f().iter().all(|r| (r - 1.0).abs() < 1e-8));
                assert!(tail_to_limit < 1e-6);
                assert!(validation.valid);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn envelope_sequence_limit_is_lipschitz() {
        let m = ConeModel::new(HyperbolicMesh::disk(1.0, 2).unwrap());
        let seeds = [(0usize, 0.0), (10, 0.4), (30, -0.2)];
        let graphs: Vec<CauchyGraph> = (1..=24)
            .map(|k| {
                let shifted: Vec<(usize, f64)> = seeds.iter().map(|&(v, h)| (v, h + 1.0 / (k * k) as f64)).collect();
                CauchyGraph::from_log(m.clone(), &lipschitz_envelope(&m, &shifted, 0.95)).unwrap()
            })
            .collect();
        match limit_of_graph_sequence(&graphs, 1, 0.1, Tolerance::new(1e-6).unwrap()).unwrap() {
            GraphLimitOutcome::Converged { validation, .. } => assert!(validation.valid, "{validation:?}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn radii_collapsing_to_the_apex_escape() {
        let m = ConeModel::new(HyperbolicMesh::disk(1.0, 1).unwrap());
        let graphs: Vec<CauchyGraph> = (1..=20)
            .map(|k| CauchyGraph::constant(m.clone(), 1.0 / k as f64).unwrap())
            .collect();
        let out = limit_of_graph_sequence(&graphs, 1, 0.05, Tolerance::DEFAULT).unwrap();
        assert!(matches!(out, GraphLimitOutcome::BoundaryEscape { .. }), "{out:?}");
    }
}
