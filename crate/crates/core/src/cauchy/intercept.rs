use rayon::prelude::*;
use serde::Serialize;

use super::CauchyGraph;
use crate::error::{Error, Result};
use crate::model::{minkowski_distance, ConeModel, ConePoint, Event, LorentzianModel};
use crate::Tolerance;

/// Which clause of weak timelike interception a pair satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Clause {
    /// `z ≤ y`.
    ZBelowGraph,
    /// `x ≤ y ≤ z` with `d(x,z) = d(x,y) + d(y,z)`.
    Maximal,
    /// `y ≤ x`.
    XAboveGraph,
}

/// A point of the graph: a vertex sample, or a point on the piecewise
/// log-linear graph between two consecutive vertices of a geodesic chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase", tag = "kind")]
pub enum GraphPointRef {
    Vertex { vertex: usize },
    Interpolated { from: usize, to: usize, fraction: f64, r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InterceptionOutcome {
    pub clause: Clause,
    pub witness: GraphPointRef,
    /// `|d(x,y) + d(y,z) - d(x,z)|` for the maximal clause, else 0.
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InterceptionReport {
    pub intercepting: bool,
    pub outcomes: Vec<Option<InterceptionOutcome>>,
    pub first_failure: Option<usize>,
}

/// Vertices along a shortest path of the oracle from `p` to `q`, found by
/// repeatedly stepping to the nearest vertex that lies on a shortest path.
pub fn geodesic_chain(model: &ConeModel, p: usize, q: usize) -> Vec<usize> {
    let n = model.vertex_count();
    let total = model.d_omega(p, q);
    let slack = 1e-12 * (1.0 + total);
    let mut chain = vec![p];
    let mut v = p;
    while v != q {
        let rest = model.d_omega(v, q);
        let next = (0..n)
            .filter(|&w| w != v)
            .filter(|&w| (model.d_omega(v, w) + model.d_omega(w, q) - rest).abs() <= slack)
            .min_by(|&a, &b| model.d_omega(v, a).total_cmp(&model.d_omega(v, b)))
            .unwrap_or(q);
        chain.push(next);
        v = next;
    }
    chain
}

/// Checks every timelike pair `(x, z)` against the three interception
/// clauses. Clause (ii) is realized on the developed wedge of a geodesic
/// chain: with `T = r cosh σ`, `X = r sinh σ` the maximal curve from `x` to
/// `z` is a straight segment, and its crossing with the log-linear graph is
/// found by bisection.
pub fn weakly_timelike_intercepting(
    g: &CauchyGraph,
    pairs: &[(ConePoint, ConePoint)],
    tol: Tolerance,
) -> Result<InterceptionReport> {
    let model = g.model();
    for (i, (x, z)) in pairs.iter().enumerate() {
        for p in [x, z] {
            if let ConePoint::Regular { vertex, r } = *p {
                if vertex >= g.len() || !(r > 0.0) {
                    return Err(Error::input(format!("pair {i} has a point outside the cone")));
                }
            }
        }
        if !(model.distance(x, z) > 0.0) {
            return Err(Error::input(format!("pair {i} is not timelike related")));
        }
    }
    let outcomes: Vec<Option<InterceptionOutcome>> =
        pairs.par_iter().map(|(x, z)| intercept_pair(g, x, z, tol)).collect();
    let first_failure = outcomes.iter().position(Option::is_none);
    Ok(InterceptionReport {
        intercepting: first_failure.is_none(),
        outcomes,
        first_failure,
    })
}

fn intercept_pair(g: &CauchyGraph, x: &ConePoint, z: &ConePoint, tol: Tolerance) -> Option<InterceptionOutcome> {
    let model = g.model();
    let q = z.vertex()?;
    let rz = z.radius();
    if g.f()[q] >= rz {
        return Some(InterceptionOutcome {
            clause: Clause::ZBelowGraph,
            witness: GraphPointRef::Vertex { vertex: q },
            defect: 0.0,
        });
    }
    let (p, rx) = match *x {
        ConePoint::Apex => {
            // the radial segment from the apex crosses the graph at f(q)
            let y = g.point(q);
            let defect = (model.distance(x, &y) + model.distance(&y, z) - model.distance(x, z)).abs();
            return accept(Clause::Maximal, GraphPointRef::Vertex { vertex: q }, defect, rz, tol);
        }
        ConePoint::Regular { vertex, r } => (vertex, r),
    };
    if g.f()[p] <= rx {
        return Some(InterceptionOutcome {
            clause: Clause::XAboveGraph,
            witness: GraphPointRef::Vertex { vertex: p },
            defect: 0.0,
        });
    }
    let dxz = model.distance(x, z);
    let total = model.d_omega(p, q);
    if total == 0.0 {
        let y = g.point(p);
        let defect = (model.distance(x, &y) + model.distance(&y, z) - dxz).abs();
        return accept(Clause::Maximal, GraphPointRef::Vertex { vertex: p }, defect, dxz, tol);
    }
    let chain = geodesic_chain(model, p, q);
    let sigma: Vec<f64> = chain.iter().map(|&v| model.d_omega(p, v)).collect();
    let u: Vec<f64> = chain.iter().map(|&v| g.ln_f()[v]).collect();
    let graph_log = |s: f64| -> (usize, f64, f64) {
        let k = match sigma.iter().position(|&t| t >= s) {
            Some(0) => 1,
            Some(k) => k,
            None => sigma.len() - 1,
        };
        let span = sigma[k] - sigma[k - 1];
        let w = if span > 0.0 { ((s - sigma[k - 1]) / span).clamp(0.0, 1.0) } else { 1.0 };
        (k - 1, w, u[k - 1] + w * (u[k] - u[k - 1]))
    };
    let ex = Event::new(rx, 0.0);
    let ez = Event::new(rz * total.cosh(), rz * total.sinh());
    let at = |lambda: f64| Event::new(ex.t + lambda * (ez.t - ex.t), ex.x + lambda * (ez.x - ex.x));
    let gap = |lambda: f64| {
        let e = at(lambda);
        let s = (e.x / e.t).atanh().clamp(0.0, total);
        0.5 * ((e.t - e.x) * (e.t + e.x)).ln() - graph_log(s).2
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    if !(gap(lo) < 0.0 && gap(hi) > 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let ey = at(0.5 * (lo + hi));
    let s = (ey.x / ey.t).atanh().clamp(0.0, total);
    let (k, w, _) = graph_log(s);
    let r = ((ey.t - ey.x) * (ey.t + ey.x)).sqrt();
    let defect = (minkowski_distance(ex, ey) + minkowski_distance(ey, ez) - dxz).abs();
    let witness = GraphPointRef::Interpolated { from: chain[k], to: chain[k + 1], fraction: w, r };
    accept(Clause::Maximal, witness, defect, dxz, tol)
}

fn accept(clause: Clause, witness: GraphPointRef, defect: f64, scale: f64, tol: Tolerance) -> Option<InterceptionOutcome> {
    (defect <= tol.value() * scale.max(1.0)).then_some(InterceptionOutcome { clause, witness, defect })
}
