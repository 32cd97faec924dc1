use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::dj_graphs;
use crate::cauchy::CauchyGraph;
use crate::error::{Error, Result};
use crate::Tolerance;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomReport {
    pub sets: usize,
    pub tolerance: Tolerance,
    /// Row-major `d_J` matrix, each ordered pair evaluated separately.
    pub matrix: Vec<Vec<f64>>,
    pub symmetric: bool,
    pub asymmetric_pair: Option<(usize, usize)>,
    pub max_self_distance: f64,
    pub self_distance_ok: bool,
    /// Pairs that differ by more than the floor but whose `d_J` falls below
    /// the largest radial difference `max_p |f_i(p) - f_j(p)|`.
    pub definiteness_failures: Vec<(usize, usize)>,
    pub definiteness_ok: bool,
    pub triangle_trials: usize,
    pub max_triangle_excess: f64,
    pub worst_triple: Option<(usize, usize, usize)>,
    pub triangle_ok: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.symmetric && self.self_distance_ok && self.definiteness_ok && self.triangle_ok
    }
}

/// Symmetry (exact), self-distance, definiteness and `trials` random
/// triangle inequalities `d_J(A,C) <= d_J(A,B) + d_J(B,C) + 3·tol`.
pub fn verify_metric_axioms<R: Rng + ?Sized>(
    sets: &[CauchyGraph],
    trials: usize,
    rng: &mut R,
    tol: Tolerance,
) -> Result<AxiomReport> {
    let k = sets.len();
    if k == 0 {
        return Err(Error::input("no sets given"));
    }
    for s in &sets[1..] {
        sets[0].check_same_domain(s)?;
    }
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(i, j)| dj_graphs(&sets[i], &sets[j], tol).map(|r| r.value))
        .collect::<Result<_>>()?;
    let matrix: Vec<Vec<f64>> = values.chunks(k).map(|r| r.to_vec()).collect();

    let asymmetric_pair = cells.iter().copied().find(|&(i, j)| i < j && matrix[i][j] != matrix[j][i]);
    let max_self_distance = (0..k).map(|i| matrix[i][i]).fold(0.0, f64::max);

    let mut definiteness_failures = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if sets[i].log_sup_distance(&sets[j]) <= tol.value() {
                continue;
            }
            let radial = sets[i]
                .f()
                .iter()
                .zip(sets[j].f())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if !(matrix[i][j] > 0.0) || matrix[i][j] < radial - tol.value() {
                definiteness_failures.push((i, j));
            }
        }
    }

    let mut max_triangle_excess = f64::NEG_INFINITY;
    let mut worst_triple = None;
    let mut done = 0;
    if k >= 3 {
        while done < trials {
            let (a, b, c) = (rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k));
            if a == b || b == c || a == c {
                continue;
            }
            let excess = matrix[a][c] - matrix[a][b] - matrix[b][c];
            if excess > max_triangle_excess {
                max_triangle_excess = excess;
                worst_triple = Some((a, b, c));
            }
            done += 1;
        }
    }
    Ok(AxiomReport {
        sets: k,
        tolerance: tol,
        symmetric: asymmetric_pair.is_none(),
        asymmetric_pair,
        self_distance_ok: max_self_distance <= tol.value(),
        max_self_distance,
        definiteness_ok: definiteness_failures.is_empty(),
        definiteness_failures,
        triangle_trials: done,
        triangle_ok: max_triangle_excess <= 3.0 * tol.value(),
        max_triangle_excess: if done == 0 { 0.0 } else { max_triangle_excess },
        worst_triple,
        matrix,
    })
}
