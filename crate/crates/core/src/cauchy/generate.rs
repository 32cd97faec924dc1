use rand::Rng;

use super::CauchyGraph;
use crate::error::{Error, Result};
use crate::model::ConeModel;

/// Lower McShane envelope `h(p) = min_q (h0(q) + L·d_Ω(p,q))` over the seed
/// vertices. The result is `L`-Lipschitz for `d_Ω` and agrees with `h0` at
/// every seed that is not undercut by another one.
pub fn lipschitz_envelope(model: &ConeModel, seeds: &[(usize, f64)], lipschitz: f64) -> Vec<f64> {
    (0..model.vertex_count())
        .map(|p| {
            seeds
                .iter()
                .map(|&(q, h0)| h0 + lipschitz * model.d_omega(p, q))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// A random strong Cauchy graph `exp(h)` whose `h` is the `(1 - margin)`
/// envelope of `seeds` random values drawn from `log_range` at random vertices.
pub fn random_strong_graph<R: Rng + ?Sized>(
    model: &ConeModel,
    margin: f64,
    log_range: (f64, f64),
    seeds: usize,
    rng: &mut R,
) -> Result<CauchyGraph> {
    if !(0.0..1.0).contains(&margin) {
        return Err(Error::input(format!("margin {margin} outside [0,1)")));
    }
    if seeds == 0 || !(log_range.0 <= log_range.1) {
        return Err(Error::input("need at least one seed and an ordered log range"));
    }
    let n = model.vertex_count();
    let picks: Vec<(usize, f64)> = (0..seeds)
        .map(|_| {
            let v = rng.gen_range(0..n);
            let h0 = if log_range.0 == log_range.1 {
                log_range.0
            } else {
                rng.gen_range(log_range.0..log_range.1)
            };
            (v, h0)
        })
        .collect();
    let h = lipschitz_envelope(model, &picks, 1.0 - margin);
    CauchyGraph::from_log(model.clone(), &h)
}

/// `f(p) = scale · exp(d_Ω(p0, p))`: log-Lipschitz with constant exactly 1.
pub fn exp_distance_graph(model: ConeModel, p0: usize, scale: f64) -> Result<CauchyGraph> {
    if p0 >= model.vertex_count() {
        return Err(Error::IndexOutOfRange { index: p0, len: model.vertex_count() });
    }
    let f = (0..model.vertex_count())
        .map(|p| scale * model.d_omega(p0, p).exp())
        .collect();
    CauchyGraph::new(model, f)
}

/// Raises `f(v)` so that `ln f(v) - ln f(w) = factor · d_Ω(v, w)` for the
/// first mesh neighbour `w` of `v`. With `factor > 1` the result violates the
/// log-Lipschitz bound on the pair `(v, w)`. Returns the graph, `v` and `w`.
pub fn bump_violation(base: &CauchyGraph, v: usize, factor: f64) -> Result<(CauchyGraph, usize, usize)> {
    let model = base.model();
    if v >= base.len() {
        return Err(Error::IndexOutOfRange { index: v, len: base.len() });
    }
    let w = model
        .mesh()
        .neighbors(v)
        .first()
        .map(|&(w, _)| w)
        .ok_or_else(|| Error::input(format!("vertex {v} has no neighbours")))?;
    let mut h = base.ln_f().to_vec();
    h[v] = h[w] + factor * model.d_omega(v, w);
    Ok((CauchyGraph::from_log(model.clone(), &h)?, v, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::{validate_graph, ValidationMode, DEFAULT_MARGIN};
    use crate::model::HyperbolicMesh;
    use crate::Tolerance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_graphs_pass_strong_validation() {
        let model = ConeModel::new(HyperbolicMesh::disk(1.0, 3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_strong_graph(&model, DEFAULT_MARGIN, (-0.5, 1.5), 6, &mut rng).unwrap();
            let v = validate_graph(&g, ValidationMode::Strong, DEFAULT_MARGIN, Tolerance::DEFAULT).unwrap();
            assert!(v.valid, "{v:?}");
        }
    }

    #[test]
    fn envelope_keeps_undercut_free_seeds() {
        let model = ConeModel::new(HyperbolicMesh::disk(1.0, 2).unwrap());
        let h = lipschitz_envelope(&model, &[(0, 0.0), (5, 10.0)], 0.5);
        assert_eq!(h[0], 0.0);
        assert!((h[5] - 0.5 * model.d_omega(0, 5)).abs() < 1e-15);
    }
}
