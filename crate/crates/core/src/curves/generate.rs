use rand::Rng;

use super::{DiscreteCausalCurve, EndBehavior};
use crate::cauchy::{validate_graph, CauchyGraph, ValidationMode};
use crate::error::{Error, Result};
use crate::model::{ConeModel, ConePoint, FullCone, Vec3};
use crate::Tolerance;

/// Halvings used for the sampled approach to the apex and doublings for the
/// escape to infinity.
const END_STEPS: i32 = 40;

/// The ray `{r·x(vertex)}` from the apex, which it attains, with radii
/// `r_min·2^k` for `k = 0..steps` after it.
pub fn radial_ray(model: &ConeModel, vertex: usize, r_min: f64, steps: usize) -> Result<DiscreteCausalCurve<ConePoint>> {
    let mut samples = vec![(0.0, ConePoint::Apex)];
    for k in 0..steps {
        samples.push(((k + 1) as f64, model.regular(vertex, r_min * 2f64.powi(k as i32))?));
    }
    DiscreteCausalCurve::new(model, samples, EndBehavior::AttainedEndpoint, EndBehavior::EscapesToInfinity, true)
}

/// A random inextendible timelike curve of the cone.
///
/// It comes up the ray of a random vertex from near the apex to `ln r =
/// lo - 2`, walks the mesh with log-radius increments
/// `(1 + eta)·d_Ω + δ`, `δ ∈ [0, 0.05]` (at least 0.01 when it stays put),
/// until `ln r > hi + 2`, then escapes radially. Every graph with `ln f`
/// inside `[lo, hi]` lies between its two ends.
pub fn random_timelike_curve<R: Rng + ?Sized>(
    model: &ConeModel,
    log_range: (f64, f64),
    eta: f64,
    rng: &mut R,
) -> Result<DiscreteCausalCurve<ConePoint>> {
    if !(eta > 0.0) || !(log_range.0 <= log_range.1) {
        return Err(Error::input("need eta > 0 and an ordered log range"));
    }
    let n = model.vertex_count();
    let mut v = rng.gen_range(0..n);
    let mut h = log_range.0 - 2.0;
    let mut samples = Vec::new();
    for k in (1..=END_STEPS).rev() {
        samples.push((samples.len() as f64, model.regular(v, (h - k as f64 * std::f64::consts::LN_2).exp())?));
    }
    samples.push((samples.len() as f64, model.regular(v, h.exp())?));
    while h <= log_range.1 + 2.0 {
        let neighbours = model.mesh().neighbors(v);
        let next = if neighbours.is_empty() || rng.gen_bool(0.2) {
            v
        } else {
            neighbours[rng.gen_range(0..neighbours.len())].0
        };
        let d = model.d_omega(v, next);
        let delta = if next == v { rng.gen_range(0.01..0.05) } else { rng.gen_range(0.0..0.05) };
        h += (1.0 + eta) * d + delta;
        v = next;
        samples.push((samples.len() as f64, model.regular(v, h.exp())?));
    }
    for k in 1..=END_STEPS {
        samples.push((samples.len() as f64, model.regular(v, (h + k as f64 * std::f64::consts::LN_2).exp())?));
    }
    DiscreteCausalCurve::new(
        model,
        samples,
        EndBehavior::ApproachesBoundary(ConePoint::Apex),
        EndBehavior::EscapesToInfinity,
        true,
    )
}

/// For a graph violating the log-Lipschitz bound, a timelike curve meeting
/// it twice; `None` for a valid graph.
///
/// With `(a, b)` the worst pair, `u = ln f` and `u(a) < u(b)`, the curve
/// climbs the ray of `a` to the graph point `f(a)·a`, jumps to the ray of
/// `b` with log increment `d_Ω(a,b) + (u(b) - u(a) - d_Ω(a,b))/2`, which is
/// timelike and still below `f(b)`, and climbs that ray to infinity.
pub fn violation_witness_curve(
    g: &CauchyGraph,
    tol: Tolerance,
) -> Result<Option<(DiscreteCausalCurve<ConePoint>, (usize, usize))>> {
    let check = validate_graph(g, ValidationMode::Cauchy, 0.0, tol)?;
    let Some((p, q)) = check.worst_pair else { return Ok(None) };
    if check.valid {
        return Ok(None);
    }
    let u = g.ln_f();
    let (a, b) = if u[p] < u[q] { (p, q) } else { (q, p) };
    let model = g.model();
    let w = model.d_omega(a, b);
    let slack = u[b] - u[a] - w;
    if !(slack > 0.0) {
        return Ok(None);
    }
    let mut samples = Vec::new();
    let mut push = |vertex: usize, ln_r: f64| -> Result<()> {
        samples.push((samples.len() as f64, model.regular(vertex, ln_r.exp())?));
        Ok(())
    };
    for k in (1..=END_STEPS).rev() {
        push(a, u[a] - k as f64 * std::f64::consts::LN_2)?;
    }
    push(a, u[a])?;
    let h = u[a] + w + 0.5 * slack;
    push(b, h)?;
    let climb = (u[b] - h).max(0.0);
    for k in 1..=(END_STEPS + (climb / std::f64::consts::LN_2).ceil() as i32) {
        push(b, h + k as f64 * std::f64::consts::LN_2)?;
    }
    let curve = DiscreteCausalCurve::new(
        model,
        samples,
        EndBehavior::ApproachesBoundary(ConePoint::Apex),
        EndBehavior::EscapesToInfinity,
        true,
    )?;
    Ok(Some((curve, (a, b))))
}

/// `γ(t) = r(t)·x(t)` in `J+(O) ⊂ L^{1+2}` with `r(t) = sqrt(sinh(2(t+1)))`
/// and `x(t) = (cosh t, sinh t, 0)` a unit-speed geodesic, sampled at
/// `samples` evenly spaced parameters in `[0, t_max]`.
pub fn sinh_curve(t_max: f64, samples: usize) -> Result<DiscreteCausalCurve<Vec3>> {
    if samples < 2 || !(t_max > 0.0) {
        return Err(Error::input("need at least two samples and t_max > 0"));
    }
    let points = (0..samples)
        .map(|i| {
            let t = t_max * i as f64 / (samples - 1) as f64;
            let r = (2.0 * (t + 1.0)).sinh().sqrt();
            (t, [r * t.cosh(), r * t.sinh(), 0.0])
        })
        .collect();
    DiscreteCausalCurve::new(&FullCone, points, EndBehavior::AttainedEndpoint, EndBehavior::EscapesToInfinity, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::{bump_violation, random_strong_graph, DEFAULT_MARGIN};
    use crate::curves::crossing_count;
    use crate::model::HyperbolicMesh;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_curves_cross_strong_graphs_once() {
        let m = ConeModel::new(HyperbolicMesh::disk(1.0, 2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let g = random_strong_graph(&m, DEFAULT_MARGIN, (-0.5, 1.0), 4, &mut rng).unwrap();
            let c = random_timelike_curve(&m, (-0.5, 1.0 + 2.0), 0.1, &mut rng).unwrap();
            assert_eq!(crossing_count(&m, &c, &g, Tolerance::DEFAULT).unwrap().count, 1);
        }
    }

    #[test]
    fn witness_curve_crosses_twice() {
        let m = ConeModel::new(HyperbolicMesh::disk(1.0, 2).unwrap());
        let base = CauchyGraph::constant(m.clone(), 1.0).unwrap();
        assert!(violation_witness_curve(&base, Tolerance::DEFAULT).unwrap().is_none());
        let (g, _, _) = bump_violation(&base, 10, 1.5).unwrap();
        let (curve, _) = violation_witness_curve(&g, Tolerance::DEFAULT).unwrap().unwrap();
        assert_eq!(crossing_count(&m, &curve, &g, Tolerance::DEFAULT).unwrap().count, 2);
    }

    #[test]
    fn sinh_curve_is_a_timelike_sample() {
        let c = sinh_curve(4.0, 81).unwrap();
        assert_eq!(c.len(), 81);
        assert!(c.is_timelike());
        assert!(sinh_curve(0.0, 10).is_err());
    }
}
