use serde::Serialize;

use super::{DiscreteCausalCurve, EndBehavior};
use crate::causal::{FiniteLorentzianSpace, Sense};
use crate::error::{Error, ErrorClass, Result};
use crate::extrapolate::{limit_from, limit_vector};
use crate::model::{Chart, LorentzianModel};
use crate::Tolerance;

/// Convergence decisions use this multiple of the base tolerance.
const CONVERGENCE_FACTOR: f64 = 10.0;

/// Start of the last quarter of `n` samples, keeping at least three when possible.
fn tail_start(n: usize) -> usize {
    n - (n / 4).max(3).min(n)
}

/// Extrapolated limit of a tail, or infinity when the estimate is unreliable.
fn tail_limit(tail: &[f64], first_index: usize, tol: Tolerance) -> f64 {
    match limit_from(tail, first_index) {
        Some(e) if e.error <= CONVERGENCE_FACTOR * tol.value() * e.value.abs().max(1.0) => e.value.abs(),
        _ => f64::INFINITY,
    }
}

/// Extrapolated limit point, when its estimate is reliable.
fn limit_point(coords: &[Vec<f64>], first_index: usize, tol: Tolerance) -> Option<Vec<f64>> {
    let (limit, error) = limit_vector(coords, first_index)?;
    let size = limit.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    (error <= CONVERGENCE_FACTOR * tol.value() * size).then_some(limit)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase", tag = "trend")]
pub enum Trend {
    Unbounded,
    Bounded { sup_estimate: f64 },
    Inconclusive,
}

/// Classifies a nondecreasing sample sequence by its increments: growing or
/// constant increments read as unbounded, uniformly shrinking ones as a
/// convergent geometric tail. Fewer than three values, decreasing values or
/// mixed increment ratios are inconclusive.
pub fn classify_trend(values: &[f64]) -> Trend {
    if values.len() < 3 || values.iter().any(|v| !v.is_finite()) {
        return Trend::Inconclusive;
    }
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let inc: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    if inc.iter().any(|&d| d < -1e-12 * scale) {
        return Trend::Inconclusive;
    }
    let last = values[values.len() - 1];
    if inc.iter().all(|&d| d <= 1e-15 * scale) {
        return Trend::Bounded { sup_estimate: last };
    }
    let ratios: Vec<f64> = inc
        .windows(2)
        .map(|w| if w[0] > 0.0 { w[1] / w[0] } else { f64::INFINITY })
        .collect();
    let cut = 1.0 - 1e-9;
    if ratios.iter().all(|&r| r >= cut) {
        Trend::Unbounded
    } else if ratios.iter().all(|&r| r < cut) {
        let rho = ratios.iter().copied().fold(0.0, f64::max);
        Trend::Bounded { sup_estimate: last + inc[inc.len() - 1] * rho / (1.0 - rho) }
    } else {
        Trend::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EndVerdict {
    pub behavior: &'static str,
    pub inextendible: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InextendibilityReport {
    pub past: EndVerdict,
    pub future: EndVerdict,
}

impl InextendibilityReport {
    pub fn inextendible(&self) -> bool {
        self.past.inextendible && self.future.inextendible
    }
}

fn end_name(sense: Sense) -> &'static str {
    match sense {
        Sense::Future => "future",
        Sense::Past => "past",
    }
}

fn check_end<M: LorentzianModel>(
    model: &M,
    curve: &DiscreteCausalCurve<M::Point>,
    sense: Sense,
    tol: Tolerance,
) -> Result<EndVerdict> {
    let mut seq: Vec<&M::Point> = curve.points().collect();
    let behavior = match sense {
        Sense::Future => curve.future(),
        Sense::Past => {
            seq.reverse();
            curve.past()
        }
    };
    let end = end_name(sense);
    let n = seq.len();
    let inconsistent = |detail: String| Error::invariant(ErrorClass::Inextendibility, vec![], format!("{end} end: {detail}"));
    let at_boundary = |p: &M::Point| match sense {
        Sense::Future => model.is_future_boundary(p),
        Sense::Past => model.is_past_boundary(p),
    };
    let verdict = match behavior {
        EndBehavior::AttainedEndpoint => {
            let inextendible = at_boundary(seq[n - 1]);
            EndVerdict {
                behavior: behavior.label(),
                inextendible,
                detail: if inextendible {
                    format!("{end} endpoint lies in the chronological {end} boundary")
                } else {
                    format!("{end} endpoint is an interior point, so the curve extends")
                },
            }
        }
        EndBehavior::EscapesToInfinity => {
            let scales: Vec<f64> = seq.iter().map(|p| model.scale(p)).collect();
            let start = tail_start(n);
            let trend = classify_trend(&scales[start..]);
            if trend != Trend::Unbounded || !(scales[n - 1] > scales[start]) {
                return Err(inconsistent(format!("samples do not escape: tail trend {trend:?}")));
            }
            EndVerdict {
                behavior: behavior.label(),
                inextendible: true,
                detail: format!("{end} tail scale grows without bound (last {:.6e})", scales[n - 1]),
            }
        }
        EndBehavior::ApproachesBoundary(b) => {
            let dist: Vec<f64> = seq.iter().map(|p| model.chart_distance(p, b)).collect();
            let start = tail_start(n);
            let tail = &dist[start..];
            if tail.len() < 3 {
                return Err(inconsistent("too few samples to certify convergence".into()));
            }
            if tail.windows(2).any(|w| w[1] > w[0] + tol.value()) {
                return Err(inconsistent("tail does not approach the declared point".into()));
            }
            let lim = tail_limit(tail, start + 1, tol);
            if lim > CONVERGENCE_FACTOR * tol.value() {
                return Err(inconsistent(format!("tail stays {lim:.3e} away from the declared point")));
            }
            let outside = !model.contains(b);
            let inextendible = outside || at_boundary(b);
            EndVerdict {
                behavior: behavior.label(),
                inextendible,
                detail: if outside {
                    format!("{end} limit lies outside the space")
                } else if inextendible {
                    format!("{end} limit lies in the chronological {end} boundary")
                } else {
                    format!("{end} limit is an interior point, so the curve extends")
                },
            }
        }
    };
    Ok(verdict)
}

/// Checks both end flags against the samples and decides inextendibility
/// from them. Inconsistent flags are errors.
pub fn inextendibility_check<M: LorentzianModel>(
    model: &M,
    curve: &DiscreteCausalCurve<M::Point>,
    tol: Tolerance,
) -> Result<InextendibilityReport> {
    Ok(InextendibilityReport {
        past: check_end(model, curve, Sense::Past, tol)?,
        future: check_end(model, curve, Sense::Future, tol)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase", tag = "verdict")]
pub enum EndCompleteness {
    /// The end is extendible, so the condition does not apply.
    NotApplicable,
    Complete { reason: &'static str },
    /// Distance stays bounded while the endpoint is not attained.
    Incomplete { bound: f64 },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CompletenessReport {
    pub past: EndCompleteness,
    pub future: EndCompleteness,
}

impl CompletenessReport {
    pub fn complete(&self) -> bool {
        let ok = |e: &EndCompleteness| matches!(e, EndCompleteness::Complete { .. } | EndCompleteness::NotApplicable);
        ok(&self.past) && ok(&self.future)
    }
}

/// Cauchy completeness of each inextendible end: the end is complete when
/// its endpoint is attained or `t ↦ d(γ(t0), γ(t))` diverges, and
/// incomplete when that distance stays bounded.
pub fn cauchy_complete_check<M: LorentzianModel>(
    model: &M,
    curve: &DiscreteCausalCurve<M::Point>,
    tol: Tolerance,
) -> Result<CompletenessReport> {
    let inext = inextendibility_check(model, curve, tol)?;
    let points: Vec<&M::Point> = curve.points().collect();
    let n = points.len();
    let judge = |sense: Sense, verdict: &EndVerdict| -> EndCompleteness {
        if !verdict.inextendible {
            return EndCompleteness::NotApplicable;
        }
        let behavior = match sense {
            Sense::Future => curve.future(),
            Sense::Past => curve.past(),
        };
        if matches!(behavior, EndBehavior::AttainedEndpoint) {
            return EndCompleteness::Complete { reason: "attainedEndpoint" };
        }
        let d: Vec<f64> = match sense {
            Sense::Future => points.iter().map(|p| model.distance(points[0], p)).collect(),
            Sense::Past => points.iter().rev().map(|p| model.distance(p, points[n - 1])).collect(),
        };
        match classify_trend(&d[tail_start(n)..]) {
            Trend::Unbounded => EndCompleteness::Complete { reason: "distanceDiverges" },
            Trend::Bounded { sup_estimate } => EndCompleteness::Incomplete { bound: sup_estimate },
            Trend::Inconclusive => EndCompleteness::Inconclusive,
        }
    };
    Ok(CompletenessReport {
        past: judge(Sense::Past, &inext.past),
        future: judge(Sense::Future, &inext.future),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase", tag = "verdict")]
pub enum TimelikeCompleteness {
    /// Uniformly Cauchy with a limit inside the model.
    Convergent { limit: Vec<f64>, residual: f64 },
    /// Uniformly Cauchy, but the limit lies outside the model.
    Escapes { limit: Vec<f64>, residual: f64 },
    NotCauchy { detail: String },
    /// A timelike-monotone sequence in a finite space is finite.
    Finite { last: usize },
}

fn monotone_violation<P>(seq: &[P], direction: Sense, distance: impl Fn(&P, &P) -> f64) -> Option<usize> {
    seq.windows(2).position(|w| match direction {
        Sense::Future => !(distance(&w[0], &w[1]) > 0.0),
        Sense::Past => !(distance(&w[1], &w[0]) > 0.0),
    })
}

/// The uniform Cauchy condition `sup_k d(x_j, x_{j+k}) → 0` for a timelike
/// monotone sequence `x_j`, `j = first_index, ...`.
///
/// A limit candidate `L` is extrapolated from the coordinates. When every
/// term lies causally before `L` (future direction), `d(x_j, L)` bounds the
/// tail supremum by the reverse triangle inequality; the condition holds when
/// those bounds shrink to within ten tolerances of zero.
pub fn timelike_cauchy_completeness_check<M: Chart>(
    model: &M,
    seq: &[M::Point],
    direction: Sense,
    first_index: usize,
    tol: Tolerance,
) -> Result<TimelikeCompleteness> {
    if seq.len() < 2 || first_index == 0 {
        return Err(Error::input("need at least two terms indexed from 1"));
    }
    if let Some(k) = monotone_violation(seq, direction, |a, b| model.distance(a, b)) {
        return Err(Error::invariant(
            ErrorClass::Monotonicity,
            vec![k, k + 1],
            "sequence is not timelike monotone",
        ));
    }
    let coords: Vec<Vec<f64>> = seq.iter().map(|p| model.coordinates(p)).collect();
    let not_cauchy = |detail: &str| Ok(TimelikeCompleteness::NotCauchy { detail: detail.to_string() });
    let Some(limit) = limit_point(&coords, first_index, tol) else {
        return not_cauchy("no reliable limit candidate");
    };
    let Some(l) = model.point(&limit) else {
        return not_cauchy("limit candidate is not a point");
    };
    let last = &seq[seq.len() - 1];
    let ordered = match direction {
        Sense::Future => model.causal(last, &l),
        Sense::Past => model.causal(&l, last),
    };
    if !ordered {
        return not_cauchy("limit candidate is not causally beyond the tail");
    }
    let v: Vec<f64> = seq
        .iter()
        .map(|p| match direction {
            Sense::Future => model.distance(p, &l),
            Sense::Past => model.distance(&l, p),
        })
        .collect();
    let start = tail_start(v.len());
    let tail = &v[start..];
    if tail.windows(2).any(|w| w[1] > w[0] + tol.value()) {
        return not_cauchy("distances to the limit candidate do not shrink");
    }
    let residual = tail_limit(tail, first_index + start, tol);
    if residual > CONVERGENCE_FACTOR * tol.value() {
        return Ok(TimelikeCompleteness::NotCauchy {
            detail: format!("tail bound tends to {residual:.3e}, not zero"),
        });
    }
    Ok(if model.contains(&l) {
        TimelikeCompleteness::Convergent { limit, residual }
    } else {
        TimelikeCompleteness::Escapes { limit, residual }
    })
}

/// The finite-space case: a timelike monotone sequence has finitely many
/// terms, so it converges trivially.
pub fn timelike_cauchy_completeness_finite(
    space: &FiniteLorentzianSpace,
    seq: &[usize],
    direction: Sense,
) -> Result<TimelikeCompleteness> {
    if seq.is_empty() {
        return Err(Error::input("empty sequence"));
    }
    if let Some(&bad) = seq.iter().find(|&&i| i >= space.len()) {
        return Err(Error::IndexOutOfRange { index: bad, len: space.len() });
    }
    if let Some(k) = monotone_violation(seq, direction, |a, b| space.dist(*a, *b)) {
        return Err(Error::invariant(
            ErrorClass::Monotonicity,
            vec![seq[k], seq[k + 1]],
            "sequence is not timelike monotone",
        ));
    }
    Ok(TimelikeCompleteness::Finite { last: seq[seq.len() - 1] })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase", tag = "verdict")]
pub enum CompactnessVerdict {
    FinitelyCompact { reason: String },
    /// A bounded sequence whose only accumulation point lies outside the model.
    Escape { limit: Vec<f64> },
    /// The sequence does not satisfy the premise at `index`.
    PremiseFails { index: usize, reason: String },
    Inconclusive { reason: String },
}

pub fn finite_compactness_check_finite(_space: &FiniteLorentzianSpace) -> CompactnessVerdict {
    CompactnessVerdict::FinitelyCompact {
        reason: "finite space: every sequence has a constant subsequence".into(),
    }
}

/// One instance of the finite-compactness premise: `x ≪ y ≤ x_j` and
/// `d(x, x_j) <= bound` for all terms. Reports an escape when the sampled
/// sequence converges to a point outside the model.
pub fn finite_compactness_check<M: Chart>(
    model: &M,
    x: &M::Point,
    y: &M::Point,
    seq: &[M::Point],
    bound: f64,
    first_index: usize,
    tol: Tolerance,
) -> Result<CompactnessVerdict> {
    if seq.len() < 2 || first_index == 0 {
        return Err(Error::input("need at least two terms indexed from 1"));
    }
    if !(model.distance(x, y) > 0.0) {
        return Ok(CompactnessVerdict::PremiseFails { index: 0, reason: "x is not timelike before y".into() });
    }
    for (j, p) in seq.iter().enumerate() {
        if !model.causal(y, p) {
            return Ok(CompactnessVerdict::PremiseFails { index: first_index + j, reason: "term is not after y".into() });
        }
        if model.distance(x, p) > bound + tol.value() {
            return Ok(CompactnessVerdict::PremiseFails { index: first_index + j, reason: "d(x, x_j) exceeds the bound".into() });
        }
    }
    let coords: Vec<Vec<f64>> = seq.iter().map(|p| model.coordinates(p)).collect();
    let inconclusive = |reason: &str| Ok(CompactnessVerdict::Inconclusive { reason: reason.into() });
    let Some(limit) = limit_point(&coords, first_index, tol) else {
        return inconclusive("no reliable limit candidate");
    };
    let Some(l) = model.point(&limit) else {
        return inconclusive("limit candidate is not a point");
    };
    let chart: Vec<f64> = seq.iter().map(|p| model.chart_distance(p, &l)).collect();
    let start = tail_start(chart.len());
    let residual = tail_limit(&chart[start..], first_index + start, tol);
    if residual > CONVERGENCE_FACTOR * tol.value() {
        return inconclusive("no accumulation point detected in the sample");
    }
    Ok(if model.contains(&l) {
        CompactnessVerdict::FinitelyCompact { reason: "sample converges inside the model".into() }
    } else {
        CompactnessVerdict::Escape { limit }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal::fixtures;
    use crate::curves::{radial_ray, sinh_curve};
    use crate::model::{ConeModel, Event, FullCone, HyperbolicMesh, Minkowski2, Strip};

    fn strip_vertical() -> DiscreteCausalCurve<Event> {
        let mut samples: Vec<(f64, Event)> = (1..=40).rev().map(|j| 0.5f64.powi(j)).map(|t| (t, Event::new(t, 0.0))).collect();
        samples.extend((2..=40).map(|j| 1.0 - 0.5f64.powi(j)).map(|t| (t, Event::new(t, 0.0))));
        DiscreteCausalCurve::new(
            &Strip,
            samples,
            EndBehavior::ApproachesBoundary(Event::new(0.0, 0.0)),
            EndBehavior::ApproachesBoundary(Event::new(1.0, 0.0)),
            true,
        )
        .unwrap()
    }

    #[test]
    fn trends() {
        assert_eq!(classify_trend(&[0.0, 1.0, 2.0, 3.0]), Trend::Unbounded);
        assert_eq!(classify_trend(&[0.0, 1.0, 3.0, 7.0]), Trend::Unbounded);
        match classify_trend(&[0.0, 0.5, 0.75, 0.875]) {
            Trend::Bounded { sup_estimate } => assert!((sup_estimate - 1.0).abs() < 1e-12),
            t => panic!("{t:?}"),
        }
        assert_eq!(classify_trend(&[0.0, 1.0]), Trend::Inconclusive);
        assert_eq!(classify_trend(&[0.0, 1.0, 1.5, 3.0]), Trend::Inconclusive);
    }

    #[test]
    fn cone_ray_from_the_apex_is_inextendible() {
        let m = ConeModel::new(HyperbolicMesh::disk(1.0, 1).unwrap());
        let ray = radial_ray(&m, 3, 1e-3, 60).unwrap();
        let rep = inextendibility_check(&m, &ray, Tolerance::DEFAULT).unwrap();
        assert!(rep.inextendible(), "{rep:?}");
        assert_eq!(rep.past.behavior, "attainedEndpoint");
    }

    #[test]
    fn strip_vertical_curve_is_inextendible_but_incomplete() {
        let c = strip_vertical();
        let rep = inextendibility_check(&Strip, &c, Tolerance::DEFAULT).unwrap();
        assert!(rep.inextendible());
        let comp = cauchy_complete_check(&Strip, &c, Tolerance::DEFAULT).unwrap();
        assert!(matches!(comp.future, EndCompleteness::Incomplete { bound } if (bound - 1.0).abs() < 1e-6), "{comp:?}");
        assert!(matches!(comp.past, EndCompleteness::Incomplete { .. }));
        assert!(!comp.complete());
    }

    #[test]
    fn minkowski_line_is_complete() {
        let samples: Vec<(f64, Event)> = (-40..=40).map(|k| (k as f64, Event::new(k as f64, 0.0))).collect();
        let c = DiscreteCausalCurve::new(&Minkowski2, samples, EndBehavior::EscapesToInfinity, EndBehavior::EscapesToInfinity, true)
            .unwrap();
        let comp = cauchy_complete_check(&Minkowski2, &c, Tolerance::DEFAULT).unwrap();
        assert!(comp.complete(), "{comp:?}");
    }

    #[test]
    fn sinh_curve_is_future_complete() {
        let c = sinh_curve(4.0, 81).unwrap();
        let inext = inextendibility_check(&FullCone, &c, Tolerance::DEFAULT).unwrap();
        assert!(inext.future.inextendible);
        assert!(!inext.past.inextendible);
        let comp = cauchy_complete_check(&FullCone, &c, Tolerance::DEFAULT).unwrap();
        assert_eq!(comp.future, EndCompleteness::Complete { reason: "distanceDiverges" });
        assert_eq!(comp.past, EndCompleteness::NotApplicable);
    }

    #[test]
    fn interior_endpoint_means_extendible() {
        let samples = vec![(0.0, Event::new(0.2, 0.0)), (1.0, Event::new(0.5, 0.0))];
        let c = DiscreteCausalCurve::new(&Strip, samples, EndBehavior::AttainedEndpoint, EndBehavior::AttainedEndpoint, true).unwrap();
        let rep = inextendibility_check(&Strip, &c, Tolerance::DEFAULT).unwrap();
        assert!(!rep.past.inextendible && !rep.future.inextendible);
    }

    #[test]
    fn false_escape_flag_is_an_error() {
        let samples: Vec<(f64, Event)> = (1..=20).map(|j| (j as f64, Event::new(1.0 - 1.0 / j as f64, 0.0))).collect();
        let c = DiscreteCausalCurve::new(&Minkowski2, samples, EndBehavior::AttainedEndpoint, EndBehavior::EscapesToInfinity, true)
            .unwrap();
        let err = inextendibility_check(&Minkowski2, &c, Tolerance::DEFAULT).unwrap_err();
        assert_eq!(err.class(), ErrorClass::Inextendibility);
    }

    #[test]
    fn timelike_sequences() {
        let seq: Vec<Event> = (1..=64).map(|j| Event::new(1.0 - 1.0 / j as f64, 0.0)).collect();
        let tol = Tolerance::DEFAULT;
        assert!(matches!(
            timelike_cauchy_completeness_check(&Strip, &seq[1..], Sense::Future, 2, tol).unwrap(),
            TimelikeCompleteness::Escapes { .. }
        ));
        match timelike_cauchy_completeness_check(&Minkowski2, &seq, Sense::Future, 1, tol).unwrap() {
            TimelikeCompleteness::Convergent { limit, .. } => {
                assert!((limit[0] - 1.0).abs() < 1e-9 && limit[1].abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }
        let diverging: Vec<Event> = (1..=20).map(|j| Event::new(j as f64, 0.0)).collect();
        assert!(matches!(
            timelike_cauchy_completeness_check(&Minkowski2, &diverging, Sense::Future, 1, tol).unwrap(),
            TimelikeCompleteness::NotCauchy { .. }
        ));
        let rev: Vec<Event> = seq.iter().rev().copied().collect();
        let err = timelike_cauchy_completeness_check(&Minkowski2, &rev, Sense::Future, 1, tol).unwrap_err();
        assert_eq!(err.class(), ErrorClass::Monotonicity);
        let chain = fixtures::three_chain();
        assert_eq!(
            timelike_cauchy_completeness_finite(&chain, &[0, 1, 2], Sense::Future).unwrap(),
            TimelikeCompleteness::Finite { last: 2 }
        );
    }

    #[test]
    fn compactness() {
        let chain = fixtures::three_chain();
        assert!(matches!(finite_compactness_check_finite(&chain), CompactnessVerdict::FinitelyCompact { .. }));
        let seq: Vec<Event> = (2..=64).map(|j| Event::new(1.0 - 1.0 / j as f64, 0.0)).collect();
        let (x, y) = (Event::new(0.1, 0.0), Event::new(0.2, 0.0));
        let tol = Tolerance::DEFAULT;
        assert!(matches!(
            finite_compactness_check(&Strip, &x, &y, &seq, 1.0, 2, tol).unwrap(),
            CompactnessVerdict::Escape { .. }
        ));
        assert!(matches!(
            finite_compactness_check(&Minkowski2, &x, &y, &seq, 1.0, 2, tol).unwrap(),
            CompactnessVerdict::FinitelyCompact { .. }
        ));
        assert!(matches!(
            finite_compactness_check(&Minkowski2, &x, &y, &seq, 0.5, 2, tol).unwrap(),
            CompactnessVerdict::PremiseFails { .. }
        ));
    }
}
