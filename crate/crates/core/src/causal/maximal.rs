use rayon::prelude::*;

use super::{FiniteLorentzianSpace, Relation};
use crate::Tolerance;

/// Random access to a Lorentzian distance on `0..size()`.
///
/// Implemented by finite spaces and by point clouds sampled from analytic
/// models, so the maximal causal relation can quantify over more points than
/// are stored as a matrix.
pub trait DistanceKernel: Sync {
    fn size(&self) -> usize;
    fn distance(&self, i: usize, j: usize) -> f64;
}

impl DistanceKernel for FiniteLorentzianSpace {
    fn size(&self) -> usize {
        self.len()
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist(i, j)
    }
}

/// `J_d`: `(x, y)` such that `d(z,x) ≤ d(z,y)` and `d(y,z) ≤ d(x,z)` for every `z`.
///
/// Comparisons are exact, which keeps the result reflexive and transitive.
pub fn maximal_causal_relation<K: DistanceKernel>(kernel: &K) -> Relation {
    let n = kernel.size();
    let subset: Vec<usize> = (0..n).collect();
    restricted(kernel, &subset, 0.0)
}

/// `J_d` of the whole kernel restricted to `subset`: the quantifier over `z`
/// still runs over all `kernel.size()` points. Entry `(a, b)` of the result
/// refers to `(subset[a], subset[b])`. Comparisons allow `tol` of slack.
pub fn maximal_causal_relation_restricted<K: DistanceKernel>(kernel: &K, subset: &[usize], tol: Tolerance) -> Relation {
    restricted(kernel, subset, tol.value())
}

fn restricted<K: DistanceKernel>(kernel: &K, subset: &[usize], tol: f64) -> Relation {
    let m = subset.len();
    let n = kernel.size();
    let rows: Vec<Vec<bool>> = subset
        .par_iter()
        .map(|&x| {
            subset
                .iter()
                .map(|&y| {
                    (0..n).all(|z| {
                        kernel.distance(z, x) <= kernel.distance(z, y) + tol
                            && kernel.distance(y, z) <= kernel.distance(x, z) + tol
                    })
                })
                .collect()
        })
        .collect();
    Relation::from_fn(m, |a, b| rows[a][b])
}

/// Checks that `d` distinguishes points: for all `x != y` some `z` has
/// `d(x,z) != d(y,z)` or `d(z,x) != d(z,y)`. Returns the first failing pair
/// `(x, y)` with `x < y` in lexicographic order.
pub fn verify_distinguishing<K: DistanceKernel>(kernel: &K) -> Option<(usize, usize)> {
    let n = kernel.size();
    for x in 0..n {
        for y in x + 1..n {
            let distinguished = (0..n).any(|z| {
                kernel.distance(x, z) != kernel.distance(y, z) || kernel.distance(z, x) != kernel.distance(z, y)
            });
            if !distinguished {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    /// Independent brute force straight from the defining inequalities.
    fn brute_force(s: &FiniteLorentzianSpace) -> Vec<(usize, usize)> {
        let n = s.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let mut ok = true;
                for z in 0..n {
                    if s.dist(z, x) > s.dist(z, y) || s.dist(y, z) > s.dist(x, z) {
                        ok = false;
                    }
                }
                if ok {
                    out.push((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn chain_maximal_relation() {
        let s = three_chain();
        let jd = maximal_causal_relation(&s);
        let pairs: Vec<_> = jd.pairs().collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
        assert_eq!(pairs, brute_force(&s));
    }

    #[test]
    fn zero_distance_gives_full_relation() {
        let s = antichain(2);
        let jd = maximal_causal_relation(&s);
        assert_eq!(jd.pairs().count(), 4);
    }

    #[test]
    fn distinguishing() {
        assert_eq!(verify_distinguishing(&three_chain()), None);
        assert_eq!(verify_distinguishing(&antichain(2)), Some((0, 1)));
        let s = four_point_diamond().subspace(&[1, 2]).unwrap();
        assert_eq!(verify_distinguishing(&s), Some((0, 1)));
        assert_eq!(verify_distinguishing(&four_point_diamond()), None);
    }

    #[test]
    fn restricted_relation_matches_full_on_subset() {
        let s = diamond();
        let full = maximal_causal_relation(&s);
        let sub = [3usize, 0, 2];
        let r = maximal_causal_relation_restricted(&s, &sub, Tolerance::new(1e-12).unwrap());
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(r.get(a, b), full.get(sub[a], sub[b]));
            }
        }
    }
}
