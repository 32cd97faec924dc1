use serde::Serialize;

use super::{DiscreteCausalCurve, EndBehavior};
use crate::cauchy::CauchyGraph;
use crate::error::{Error, ErrorClass, Result};
use crate::model::{ConeModel, ConePoint};
use crate::Tolerance;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossingReport {
    pub count: usize,
    /// Parameter intervals `[t_i, t_j]` bracketing each crossing.
    pub intervals: Vec<(f64, f64)>,
}

fn sign(s: f64, tol: Tolerance) -> i8 {
    if tol.is_zero(s) {
        0
    } else if s > 0.0 {
        1
    } else {
        -1
    }
}

/// Counts how often a cone curve meets the graph `S_f`, from the signs of
/// `s(t) = ln r(t) - ln f(p(t))`: each strict sign change between
/// consecutive samples and each maximal run of zeros is one crossing.
///
/// A curve whose past approaches or attains the apex must start below the
/// graph, and one escaping to infinity must end above it.
pub fn crossing_count(
    model: &ConeModel,
    curve: &DiscreteCausalCurve<ConePoint>,
    g: &CauchyGraph,
    tol: Tolerance,
) -> Result<CrossingReport> {
    if !model.same_domain(g.model()) {
        return Err(Error::invariant(ErrorClass::MeshMismatch, vec![], "curve and graph live on different meshes"));
    }
    let ln_f = g.ln_f();
    let s: Vec<f64> = curve
        .samples()
        .iter()
        .enumerate()
        .map(|(k, (_, p))| match *p {
            ConePoint::Apex => Ok(f64::NEG_INFINITY),
            ConePoint::Regular { vertex, r } => ln_f
                .get(vertex)
                .map(|lf| r.ln() - lf)
                .ok_or_else(|| Error::invariant(ErrorClass::MeshMismatch, vec![k], "curve vertex outside the graph's mesh")),
        })
        .collect::<Result<_>>()?;
    let c: Vec<i8> = s.iter().map(|&v| sign(v, tol)).collect();
    let starts_at_apex = match curve.past() {
        EndBehavior::ApproachesBoundary(ConePoint::Apex) => true,
        EndBehavior::AttainedEndpoint => matches!(curve.samples()[0].1, ConePoint::Apex),
        _ => false,
    };
    if starts_at_apex && c[0] >= 0 {
        return Err(Error::invariant(
            ErrorClass::Inextendibility,
            vec![0],
            "curve declared to start at the apex begins on or above the graph",
        ));
    }
    let last = c.len() - 1;
    if matches!(curve.future(), EndBehavior::EscapesToInfinity) && c[last] <= 0 {
        return Err(Error::invariant(
            ErrorClass::Inextendibility,
            vec![last],
            "curve declared to escape to infinity ends on or below the graph",
        ));
    }
    let t: Vec<f64> = curve.samples().iter().map(|(t, _)| *t).collect();
    let mut intervals = Vec::new();
    let mut i = 0;
    while i < c.len() {
        if c[i] == 0 {
            let start = i;
            while i < c.len() && c[i] == 0 {
                i += 1;
            }
            intervals.push((t[start], t[i - 1]));
            continue;
        }
        if i + 1 < c.len() && c[i + 1] != 0 && c[i + 1] != c[i] {
            intervals.push((t[i], t[i + 1]));
        }
        i += 1;
    }
    Ok(CrossingReport { count: intervals.len(), intervals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::HyperbolicMesh;

    fn radial(model: &ConeModel, vertex: usize, rs: &[f64], past: EndBehavior<ConePoint>) -> DiscreteCausalCurve<ConePoint> {
        let samples = rs
            .iter()
            .map(|&r| (r, ConePoint::new(vertex, r).unwrap()))
            .collect();
        DiscreteCausalCurve::new(model, samples, past, EndBehavior::EscapesToInfinity, true).unwrap()
    }

    #[test]
    fn radial_curve_crosses_a_constant_graph_once() {
        let m = ConeModel::new(HyperbolicMesh::disk(1.0, 1).unwrap());
        let g = CauchyGraph::constant(m.clone(), 1.0).unwrap();
        let rs: Vec<f64> = (1..=20).map(|k| k as f64 * 0.25).collect();
        let curve = radial(&m, 2, &rs, EndBehavior::ApproachesBoundary(ConePoint::Apex));
        let rep = crossing_count(&m, &curve, &g, Tolerance::DEFAULT).unwrap();
        assert_eq!(rep.count, 1);
        assert_eq!(rep.intervals, vec![(1.0, 1.0)]);
        let rs: Vec<f64> = (1..=20).map(|k| k as f64 * 0.3).collect();
        let rep = crossing_count(&m, &radial(&m, 2, &rs, EndBehavior::EscapesToInfinity), &g, Tolerance::DEFAULT).unwrap();
        assert_eq!(rep.count, 1);
        let (a, b) = rep.intervals[0];
        assert!((a - 0.9).abs() < 1e-12 && (b - 1.2).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_behaviour_is_rejected() {
        let m = ConeModel::new(HyperbolicMesh::disk(1.0, 1).unwrap());
        let g = CauchyGraph::constant(m.clone(), 1.0).unwrap();
        let above = radial(&m, 2, &[2.0, 3.0, 4.0], EndBehavior::ApproachesBoundary(ConePoint::Apex));
        let err = crossing_count(&m, &above, &g, Tolerance::DEFAULT).unwrap_err();
        assert_eq!(err.class(), ErrorClass::Inextendibility);
        let other = ConeModel::new(HyperbolicMesh::disk(2.0, 1).unwrap());
        let curve = radial(&other, 2, &[0.5, 3.0], EndBehavior::EscapesToInfinity);
        assert_eq!(crossing_count(&other, &curve, &g, Tolerance::DEFAULT).unwrap_err().class(), ErrorClass::MeshMismatch);
    }
}
