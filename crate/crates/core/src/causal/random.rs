use rand::Rng;

use super::{FiniteLorentzianSpace, Relation};

/// Random weighted poset on `n` points.
///
/// A random DAG on `0..n` (edges only from lower to higher index, each with
/// probability `edge_probability` and weight in `[0.1, 1)`) is transitively
/// closed and `dist(x, y)` is set to the longest weighted path from `x` to `y`,
/// so the reverse triangle inequality holds by construction. Every point is
/// attached to at least one edge, which keeps the spacelike boundary empty.
/// The identity labelling is a topological order.
pub fn random_weighted_poset<R: Rng + ?Sized>(n: usize, edge_probability: f64, rng: &mut R) -> FiniteLorentzianSpace {
    let mut weight = vec![f64::NAN; n * n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_probability.clamp(0.0, 1.0)) {
                weight[i * n + j] = rng.gen_range(0.1..1.0);
            }
        }
    }
    if n > 1 {
        for i in 0..n {
            let touched = (0..n).any(|j| !weight[i * n + j].is_nan() || !weight[j * n + i].is_nan());
            if !touched {
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                weight[a * n + b] = rng.gen_range(0.1..1.0);
            }
        }
    }
    // longest[i][j] = -inf when j is unreachable from i
    let mut longest = vec![f64::NEG_INFINITY; n * n];
    for i in 0..n {
        longest[i * n + i] = 0.0;
        for j in i + 1..n {
            let mut best = f64::NEG_INFINITY;
            for k in i..j {
                let w = weight[k * n + j];
                let base = longest[i * n + k];
                if !w.is_nan() && base > f64::NEG_INFINITY {
                    best = best.max(base + w);
                }
            }
            longest[i * n + j] = best;
        }
    }
    let causal = Relation::from_fn(n, |i, j| longest[i * n + j] > f64::NEG_INFINITY);
    let dist = longest.iter().map(|&v| v.max(0.0)).collect();
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FiniteLorentzianSpace::new(labels, dist, causal).expect("generator produces valid shapes")
}

#[cfg(test)]
mod tests {
    use super::super::compute_boundaries;
    use super::*;
    use crate::Tolerance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_posets_satisfy_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.gen_range(2..30);
            let s = random_weighted_poset(n, 0.15, &mut rng);
            s.check_invariants(Tolerance::DEFAULT, true).unwrap();
            let b = compute_boundaries(&s);
            assert!(b.spacelike_boundary.is_empty());
            assert!(b.bubbling_empty);
        }
    }
}
