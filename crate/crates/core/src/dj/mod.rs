//! The symmetrized sup distance `d_J(A,B) = sup d(x,y) + d(y,x)`.
//!
//! Sets are finite samples, so every value is a maximum over the sample
//! product and a lower bound for the continuum supremum.

mod axioms;
mod limit;
mod net;

pub use axioms::{verify_metric_axioms, AxiomReport};
pub use limit::{
    limit_of_graph_sequence, limit_of_slice_sequence, GraphLimitOutcome, SliceLimitOutcome, SliceSpace,
};
pub use net::{blaschke_net, constant_net, random_ball_probe, BlaschkeNet, CoverageReport};

use rayon::prelude::*;
use serde::Serialize;

use crate::cauchy::{CauchyGraph, CauchySet};
use crate::error::{Error, Result};
use crate::model::{cone_distance_scalar, LorentzianModel};
use crate::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DJReport {
    pub value: f64,
    pub infinite: bool,
    /// Indices `(i, j)` into the two samples realizing the maximum.
    pub witness: (usize, usize),
    pub tolerance: Tolerance,
}

impl DJReport {
    fn new(value: f64, witness: (usize, usize), tolerance: Tolerance) -> Self {
        DJReport { value, infinite: value.is_infinite(), witness, tolerance }
    }
}

/// `d(x,y) + d(y,x)`.
pub fn dj_point<M: LorentzianModel>(model: &M, x: &M::Point, y: &M::Point) -> f64 {
    model.distance(x, y) + model.distance(y, x)
}

fn better(a: (f64, (usize, usize)), b: (f64, (usize, usize))) -> (f64, (usize, usize)) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Exhaustive maximum of `d_J` over `a × b`.
pub fn dj_set<M: LorentzianModel>(model: &M, a: &[M::Point], b: &[M::Point], tol: Tolerance) -> Result<DJReport> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::input("d_J needs two nonempty samples"));
    }
    let (value, witness) = a
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            b.iter()
                .enumerate()
                .map(|(j, y)| (dj_point(model, x, y), (i, j)))
                .fold((f64::NEG_INFINITY, (i, 0)), better)
        })
        .reduce(|| (f64::NEG_INFINITY, (usize::MAX, usize::MAX)), better);
    Ok(DJReport::new(value, witness, tol))
}

/// `d_J` between two radius graphs over the same mesh, evaluated on
/// log radii. Witness indices are vertices.
pub fn dj_graphs(a: &CauchyGraph, b: &CauchyGraph, tol: Tolerance) -> Result<DJReport> {
    a.check_same_domain(b)?;
    let model = a.model();
    let (fa, fb, la, lb) = (a.f(), b.f(), a.ln_f(), b.ln_f());
    let (value, witness) = (0..a.len())
        .into_par_iter()
        .map(|p| {
            let mut best = (f64::NEG_INFINITY, (p, 0));
            for q in 0..b.len() {
                let d = model.d_omega(p, q);
                let mut v = 0.0;
                if lb[q] - la[p] >= d {
                    v += cone_distance_scalar(fa[p], fb[q], d);
                }
                if la[p] - lb[q] >= d {
                    v += cone_distance_scalar(fb[q], fa[p], d);
                }
                if v > best.0 {
                    best = (v, (p, q));
                }
            }
            best
        })
        .reduce(|| (f64::NEG_INFINITY, (usize::MAX, usize::MAX)), better);
    Ok(DJReport::new(value, witness, tol))
}

/// `d_J` between Cauchy sets of the cone, including the apex singleton.
pub fn dj_cauchy_sets(a: &CauchySet, b: &CauchySet, tol: Tolerance) -> Result<DJReport> {
    match (a, b) {
        (CauchySet::Apex, CauchySet::Apex) => Ok(DJReport::new(0.0, (0, 0), tol)),
        (CauchySet::Apex, CauchySet::Graph(g)) | (CauchySet::Graph(g), CauchySet::Apex) => {
            let (v, r) = g
                .f()
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (v, &r)| if r > acc.1 { (v, r) } else { acc });
            let witness = if matches!(a, CauchySet::Apex) { (0, v) } else { (v, 0) };
            Ok(DJReport::new(r, witness, tol))
        }
        (CauchySet::Graph(x), CauchySet::Graph(y)) => dj_graphs(x, y, tol),
    }
}
