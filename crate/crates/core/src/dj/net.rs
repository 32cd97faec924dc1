use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::dj_graphs;
use crate::cauchy::{lipschitz_envelope, random_strong_graph, validate_graph, CauchyGraph, ValidationMode};
use crate::error::{Error, ErrorClass, Result};
use crate::model::ConeModel;
use crate::Tolerance;

/// Upper bound for `d_J(S_f, S_g)` when `|ln f - ln g| <= delta` everywhere,
/// both logs are `lipschitz`-Lipschitz and all radii are at most `f_max`.
///
/// A pair `f(p)·p ≤ g(q)·q` needs `d_Ω(p,q) <= D* = delta / (1 - L)`; with
/// `b = ln g(q) - ln f(p) <= delta + L·d_Ω` the cosh law gives
/// `d² <= f_max² · 2e^b (cosh b - cosh d_Ω)`. The bound is the maximum of the
/// right side over a fine grid in `d_Ω ∈ [0, D*]`, padded by 1%.
pub fn log_perturbation_bound(delta: f64, lipschitz: f64, f_max: f64) -> f64 {
    let d_max = delta / (1.0 - lipschitz);
    let steps = 512;
    let sup = (0..=steps)
        .map(|i| {
            let d = d_max * i as f64 / steps as f64;
            let b = delta + lipschitz * d;
            (2.0 * b.exp() * (b.cosh() - d.cosh())).max(0.0)
        })
        .fold(0.0, f64::max);
    1.01 * f_max * sup.sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverageReport {
    pub probes: usize,
    /// Largest `d_J` from a probe to its net member, an upper bound for the
    /// distance to the net.
    pub max_distance: f64,
    pub worst_probe: Option<usize>,
    pub covered: bool,
    pub members: usize,
}

/// An `epsilon`-net of the closed `d_J`-ball of radius `r` about a strong
/// graph.
///
/// Members are the images of the quantization map `Q`: round `ln f` to a
/// grid of step `2δ`, then take the `L`-Lipschitz lower envelope of the rounded
/// values with `L = 1 - margin/2`. `Q` moves `ln f` by at most `δ`, and `δ` is
/// chosen so that [`log_perturbation_bound`] stays below `epsilon`. The image
/// of the ball under `Q` is finite; members are materialized as the ball is
/// probed.
#[derive(Debug, Clone)]
pub struct BlaschkeNet {
    center: CauchyGraph,
    radius: f64,
    epsilon: f64,
    margin: f64,
    lipschitz: f64,
    delta: f64,
    f_max: f64,
    log_cardinality_bound: f64,
    members: Vec<CauchyGraph>,
    index: HashMap<Vec<i64>, usize>,
    tol: Tolerance,
}

impl BlaschkeNet {
    pub fn center(&self) -> &CauchyGraph {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    /// Largest radius the ball can reach, used in the perturbation bound.
    pub fn f_max(&self) -> f64 {
        self.f_max
    }

    /// Quantization step of `ln f`.
    pub fn step(&self) -> f64 {
        2.0 * self.delta
    }

    pub fn members(&self) -> &[CauchyGraph] {
        &self.members
    }

    /// `log10` of an upper bound on the number of members the ball can produce.
    pub fn log10_cardinality_bound(&self) -> f64 {
        self.log_cardinality_bound
    }

    fn key(&self, g: &CauchyGraph) -> Vec<i64> {
        let step = self.step();
        g.ln_f().iter().map(|h| (h / step).round() as i64).collect()
    }

    fn realize(&self, key: &[i64]) -> Result<CauchyGraph> {
        let model = self.center.model();
        let step = self.step();
        let seeds: Vec<(usize, f64)> = key.iter().enumerate().map(|(v, &k)| (v, k as f64 * step)).collect();
        CauchyGraph::from_log(model.clone(), &lipschitz_envelope(model, &seeds, self.lipschitz))
    }

    /// The member `Q(g)`, added to the net if new, with its index.
    pub fn quantize(&mut self, g: &CauchyGraph) -> Result<usize> {
        g.check_same_domain(&self.center)?;
        let key = self.key(g);
        if let Some(&i) = self.index.get(&key) {
            return Ok(i);
        }
        let member = self.realize(&key)?;
        self.members.push(member);
        self.index.insert(key, self.members.len() - 1);
        Ok(self.members.len() - 1)
    }

    /// Quantizes every probe and measures the `d_J` to its member.
    pub fn cover(&mut self, probes: &[CauchyGraph]) -> Result<CoverageReport> {
        let assigned: Vec<usize> = probes.iter().map(|p| self.quantize(p)).collect::<Result<_>>()?;
        let distances: Vec<f64> = probes
            .par_iter()
            .zip(&assigned)
            .map(|(p, &m)| dj_graphs(p, &self.members[m], self.tol).map(|r| r.value))
            .collect::<Result<_>>()?;
        let (worst_probe, max_distance) = distances
            .iter()
            .copied()
            .enumerate()
            .fold((None, 0.0), |acc, (i, d)| if d > acc.1 { (Some(i), d) } else { acc });
        Ok(CoverageReport {
            probes: probes.len(),
            max_distance,
            worst_probe,
            covered: max_distance <= self.epsilon,
            members: self.members.len(),
        })
    }
}

fn strong_margin(center: &CauchyGraph, margin: f64, tol: Tolerance) -> Result<()> {
    let v = validate_graph(center, ValidationMode::Strong, margin, tol)?;
    if v.valid {
        Ok(())
    } else {
        Err(Error::input(format!(
            "center is not a strong graph with margin {margin} (ratio {:.6})",
            v.worst_ratio
        )))
    }
}

/// Builds the net of the ball `B(center, r)` for probes that are
/// `(1 - margin)`-log-Lipschitz. With `r = 0` the net is `{center}`.
pub fn blaschke_net(center: &CauchyGraph, r: f64, epsilon: f64, margin: f64, tol: Tolerance) -> Result<BlaschkeNet> {
    if !(r >= 0.0 && r.is_finite()) || !(epsilon > 0.0) {
        return Err(Error::input("need r >= 0 and epsilon > 0"));
    }
    if !(margin > 0.0 && margin < 1.0) {
        return Err(Error::input(format!("margin {margin} outside (0,1)")));
    }
    strong_margin(center, margin, tol)?;
    let f_min = center.f().iter().copied().fold(f64::INFINITY, f64::min);
    let f_top = center.f().iter().copied().fold(0.0, f64::max);
    if f_min <= r {
        return Err(Error::invariant(
            ErrorClass::BallLeavesRegion,
            vec![],
            format!("ball of radius {r} reaches the apex (min radius {f_min})"),
        ));
    }
    let lipschitz = 1.0 - 0.5 * margin;
    let f_max = f_top + r;
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if log_perturbation_bound(mid, lipschitz, f_max * mid.exp()) <= epsilon {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let delta = lo;
    let log_span = (f_max.ln() - (f_min - r).ln()).max(0.0);
    let levels = (log_span / (2.0 * delta)).ceil() + 2.0;
    let mut net = BlaschkeNet {
        center: center.clone(),
        radius: r,
        epsilon,
        margin,
        lipschitz,
        delta,
        f_max,
        log_cardinality_bound: center.len() as f64 * levels.log10(),
        members: Vec::new(),
        index: HashMap::new(),
        tol,
    };
    if r == 0.0 {
        net.members.push(center.clone());
        net.index.insert(net.key(center), 0);
        net.log_cardinality_bound = 0.0;
    } else {
        net.quantize(center)?;
    }
    Ok(net)
}

/// `⌈2r/ε⌉ + 1` constant graphs evenly spaced over `[c - r, c + r]`.
pub fn constant_net(model: &ConeModel, c: f64, r: f64, epsilon: f64) -> Result<Vec<CauchyGraph>> {
    if !(c - r > 0.0) || !(epsilon > 0.0) {
        return Err(Error::input("constant net needs c > r and epsilon > 0"));
    }
    let k = (2.0 * r / epsilon).ceil() as usize;
    (0..=k)
        .map(|i| {
            let t = if k == 0 { 0.0 } else { i as f64 / k as f64 };
            CauchyGraph::constant(model.clone(), c - r + 2.0 * r * t)
        })
        .collect()
}

/// A random `(1 - margin)`-Lipschitz graph in the closed ball `B(center, r)`.
///
/// A random strong graph `h1` is pulled toward the center along
/// `h_s = h_c + s (h1 - h_c)`; bisection finds the largest sampled `s` that
/// stays in the ball, and the probe uses a uniform fraction of it.
pub fn random_ball_probe<R: Rng + ?Sized>(
    center: &CauchyGraph,
    r: f64,
    margin: f64,
    rng: &mut R,
    tol: Tolerance,
) -> Result<CauchyGraph> {
    let model = center.model();
    let lo = center.ln_f().iter().copied().fold(f64::INFINITY, f64::min);
    let hi = center.ln_f().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let seeds = rng.gen_range(1..=8);
    let target = random_strong_graph(model, margin, (lo - 1.0, hi + 1.0), seeds, rng)?;
    let fraction: f64 = rng.gen_range(0.0..=1.0);
    let blend = |s: f64| -> Result<CauchyGraph> {
        let h: Vec<f64> = center
            .ln_f()
            .iter()
            .zip(target.ln_f())
            .map(|(c, t)| c + s * (t - c))
            .collect();
        CauchyGraph::from_log(model.clone(), &h)
    };
    let (mut a, mut b) = (0.0, 1.0);
    if dj_graphs(&blend(1.0)?, center, tol)?.value <= r {
        a = 1.0;
    } else {
        for _ in 0..14 {
            let mid = 0.5 * (a + b);
            if dj_graphs(&blend(mid)?, center, tol)?.value <= r {
                a = mid;
            } else {
                b = mid;
            }
        }
    }
    blend(a * fraction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::HyperbolicMesh;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn model() -> ConeModel {
        ConeModel::new(HyperbolicMesh::disk(1.0, 2).unwrap())
    }

    #[test]
    fn bound_dominates_constant_shifts() {
        // constants c and c·e^δ are at d_J = c (e^δ - 1)
        for delta in [1e-4f64, 1e-3, 1e-2] {
            let exact = 2.0 * (delta.exp() - 1.0);
            assert!(log_perturbation_bound(delta, 0.975, 2.0 * delta.exp()) >= exact);
        }
    }

    #[test]
    fn zero_radius_ball_is_its_center() {
        let c = CauchyGraph::constant(model(), 1.0).unwrap();
        let net = blaschke_net(&c, 0.0, 0.05, 0.05, Tolerance::DEFAULT).unwrap();
        assert_eq!(net.members().len(), 1);
        assert_eq!(net.members()[0].f(), c.f());
    }

    #[test]
    fn ball_reaching_the_apex_is_rejected() {
        let c = CauchyGraph::constant(model(), 0.4).unwrap();
        let err = blaschke_net(&c, 0.5, 0.05, 0.05, Tolerance::DEFAULT).unwrap_err();
        assert_eq!(err.class(), ErrorClass::BallLeavesRegion);
    }

    #[test]
    fn constant_net_covers_constant_probes() {
        let m = model();
        let net = constant_net(&m, 1.0, 0.5, 0.05).unwrap();
        assert_eq!(net.len(), 21);
        for k in 0..=50 {
            let c = 0.5 + k as f64 / 50.0;
            let probe = CauchyGraph::constant(m.clone(), c).unwrap();
            let d = net
                .iter()
                .map(|g| dj_graphs(&probe, g, Tolerance::DEFAULT).unwrap().value)
                .fold(f64::INFINITY, f64::min);
            assert!(d <= 0.05 / 2.0 + 1e-12);
        }
    }

    #[test]
    fn probes_stay_in_the_ball_and_are_covered() {
        let m = model();
        let c = CauchyGraph::constant(m, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tol = Tolerance::DEFAULT;
        let probes: Vec<CauchyGraph> = (0..40)
            .map(|_| random_ball_probe(&c, 0.5, 0.05, &mut rng, tol).unwrap())
            .collect();
        for p in &probes {
            assert!(dj_graphs(p, &c, tol).unwrap().value <= 0.5);
        }
        let mut net = blaschke_net(&c, 0.5, 0.05, 0.05, tol).unwrap();
        let rep = net.cover(&probes).unwrap();
        assert!(rep.covered, "{rep:?}");
        assert!(net.members().iter().all(|g| {
            validate_graph(g, ValidationMode::Strong, 0.025, tol).unwrap().valid
        }));
    }
}
