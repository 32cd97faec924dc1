use serde::{Deserialize, Serialize};

use super::Relation;
use crate::error::{Error, ErrorClass, Result};
use crate::Tolerance;

/// Direction for past/future queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Future,
    Past,
}

/// Which relation a past/future query uses: `dist > 0` or the causal matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Chronological,
    Causal,
}

/// Rungs of the causal ladder that can be decided on a finite space.
///
/// On a finite space with the discrete topology every relation is closed and
/// every causal diamond is compact, so the three upper rungs coincide and
/// only antisymmetry separates `None` from `GloballyHyperbolic`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CausalityLevel {
    None,
    Causal,
    CausallySimple,
    GloballyHyperbolic,
}

/// `n` labelled points with a Lorentzian distance matrix and a causal relation.
///
/// The causal relation is carried explicitly since null relations (`d = 0`
/// but `x ≤ y`) cannot be recovered from `dist`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteLorentzianSpace {
    labels: Vec<String>,
    dist: Vec<f64>,
    causal: Relation,
}

impl FiniteLorentzianSpace {
    /// Shape and sign checks only; the order-theoretic invariants are checked by
    /// [`check_invariants`](Self::check_invariants).
    pub fn new(labels: Vec<String>, dist: Vec<f64>, causal: Relation) -> Result<Self> {
        let n = labels.len();
        if dist.len() != n * n {
            return Err(Error::input(format!(
                "dist has {} entries, expected {} for {n} labels",
                dist.len(),
                n * n
            )));
        }
        if causal.len() != n {
            return Err(Error::input(format!(
                "causal relation is on {} points, expected {n}",
                causal.len()
            )));
        }
        if let Some(pos) = dist.iter().position(|d| d.is_nan() || *d < 0.0) {
            return Err(Error::input(format!(
                "dist[{}][{}] = {} is not a nonnegative number",
                pos / n,
                pos % n,
                dist[pos]
            )));
        }
        Ok(FiniteLorentzianSpace { labels, dist, causal })
    }

    pub fn from_matrices(labels: Vec<String>, dist: &[Vec<f64>], causal: &[Vec<bool>]) -> Result<Self> {
        let n = labels.len();
        if dist.len() != n || causal.len() != n || dist.iter().any(|r| r.len() != n) || causal.iter().any(|r| r.len() != n) {
            return Err(Error::input("matrices must be square with one row per label"));
        }
        let flat: Vec<f64> = dist.iter().flatten().copied().collect();
        let rel = Relation::from_fn(n, |i, j| causal[i][j]);
        Self::new(labels, flat, rel)
    }

    /// Builds a space from a distance matrix, declaring `x ≤ y` exactly where
    /// `x = y` or `dist(x,y) > 0`.
    pub fn from_timelike(labels: Vec<String>, dist: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if dist.len() != n * n {
            return Err(Error::input("dist must have n*n entries"));
        }
        let causal = Relation::from_fn(n, |i, j| i == j || dist[i * n + j] > 0.0);
        Self::new(labels, dist, causal)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn dist_row_major(&self) -> &[f64] {
        &self.dist
    }

    #[inline]
    pub fn causal(&self, i: usize, j: usize) -> bool {
        self.causal.get(i, j)
    }

    #[inline]
    pub fn timelike(&self, i: usize, j: usize) -> bool {
        self.dist(i, j) > 0.0
    }

    pub fn causal_relation(&self) -> &Relation {
        &self.causal
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    /// The subspace on `indices`, in the given order.
    pub fn subspace(&self, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            self.check_index(i)?;
        }
        let m = indices.len();
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let mut dist = Vec::with_capacity(m * m);
        for &i in indices {
            for &j in indices {
                dist.push(self.dist(i, j));
            }
        }
        let causal = Relation::from_fn(m, |a, b| self.causal(indices[a], indices[b]));
        Self::new(labels, dist, causal)
    }

    /// Checks, in order: finiteness, reflexivity, `dist > 0 ⇒ causal`,
    /// transitivity, the reverse triangle inequality on causal triples and,
    /// when `require_causality` is set, antisymmetry. The first failing tuple in
    /// lexicographic order is reported.
    pub fn check_invariants(&self, tol: Tolerance, require_causality: bool) -> Result<()> {
        let n = self.len();
        if let Some(pos) = self.dist.iter().position(|d| !d.is_finite()) {
            return Err(Error::invariant(
                ErrorClass::InfiniteSeparation,
                vec![pos / n, pos % n],
                "infinite distance values are not supported by the verifiers",
            ));
        }
        if let Some(i) = self.causal.reflexivity_failure() {
            return Err(Error::invariant(ErrorClass::Reflexivity, vec![i], "x ≤ x fails"));
        }
        for i in 0..n {
            for j in 0..n {
                if self.timelike(i, j) && !self.causal(i, j) {
                    return Err(Error::invariant(
                        ErrorClass::TimelikeNotCausal,
                        vec![i, j],
                        format!("dist = {} > 0 but the pair is not causal", self.dist(i, j)),
                    ));
                }
            }
        }
        if let Some((i, j, k)) = self.causal.transitivity_failure() {
            return Err(Error::invariant(
                ErrorClass::Transitivity,
                vec![i, j, k],
                "x ≤ y ≤ z but not x ≤ z",
            ));
        }
        for i in 0..n {
            for j in 0..n {
                if !self.causal(i, j) {
                    continue;
                }
                for k in 0..n {
                    if !self.causal(j, k) {
                        continue;
                    }
                    let lhs = self.dist(i, j) + self.dist(j, k);
                    if !tol.le(lhs, self.dist(i, k)) {
                        return Err(Error::invariant(
                            ErrorClass::ReverseTriangle,
                            vec![i, j, k],
                            format!("d(x,y) + d(y,z) = {lhs} > d(x,z) = {}", self.dist(i, k)),
                        ));
                    }
                }
            }
        }
        if require_causality {
            if let Some((i, j)) = self.causal.antisymmetry_failure() {
                return Err(Error::invariant(
                    ErrorClass::Antisymmetry,
                    vec![i, j],
                    "x ≤ y and y ≤ x for distinct points",
                ));
            }
        }
        Ok(())
    }

    /// `I±(x)` or `J±(x)`, sorted by index.
    pub fn past_future(&self, x: usize, sense: Sense, kind: RelationKind) -> Result<Vec<usize>> {
        self.check_index(x)?;
        let related = |a: usize, b: usize| match kind {
            RelationKind::Chronological => self.timelike(a, b),
            RelationKind::Causal => self.causal(a, b),
        };
        Ok((0..self.len())
            .filter(|&y| match sense {
                Sense::Future => related(x, y),
                Sense::Past => related(y, x),
            })
            .collect())
    }

    /// Lorentzian length of a causal chain: the sum of `dist` over consecutive
    /// points. By the reverse triangle inequality this is the infimum over all
    /// coarser partitions of the chain.
    pub fn chain_length(&self, chain: &[usize]) -> Result<f64> {
        for &i in chain {
            self.check_index(i)?;
        }
        let mut total = 0.0;
        for (pos, w) in chain.windows(2).enumerate() {
            if !self.causal(w[0], w[1]) {
                return Err(Error::invariant(
                    ErrorClass::NonCausalChain,
                    vec![pos, pos + 1],
                    format!("{} ≤ {} fails", self.labels[w[0]], self.labels[w[1]]),
                ));
            }
            total += self.dist(w[0], w[1]);
        }
        Ok(total)
    }

    /// Highest rung of the causal ladder that holds. Closedness of `J±` and of
    /// the relation and compactness of diamonds are automatic on finite discrete
    /// spaces, so antisymmetry alone decides between the extremes.
    pub fn causality_level(&self) -> CausalityLevel {
        if self.causal.antisymmetry_failure().is_some() {
            CausalityLevel::None
        } else {
            CausalityLevel::GloballyHyperbolic
        }
    }
}

/// Small spaces used throughout tests, examples and the CLI.
pub mod fixtures {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// `a ≤ b ≤ c` with `d(a,b) = d(b,c) = 1`, `d(a,c) = 2`.
    pub fn three_chain() -> FiniteLorentzianSpace {
        let dist = vec![0.0, 1.0, 2.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0];
        FiniteLorentzianSpace::from_timelike(labels(&["a", "b", "c"]), dist).expect("fixture")
    }

    /// `a ≤ b` with `d(a,b) = 1`.
    pub fn two_chain() -> FiniteLorentzianSpace {
        FiniteLorentzianSpace::from_timelike(labels(&["a", "b"]), vec![0.0, 1.0, 0.0, 0.0]).expect("fixture")
    }

    /// Two distinct points with `a ≤ b` and `b ≤ a`, all distances zero.
    pub fn two_cycle() -> FiniteLorentzianSpace {
        FiniteLorentzianSpace::new(labels(&["a", "b"]), vec![0.0; 4], Relation::from_fn(2, |_, _| true)).expect("fixture")
    }

    /// `n` causally unrelated points.
    pub fn antichain(n: usize) -> FiniteLorentzianSpace {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        FiniteLorentzianSpace::from_timelike(names, vec![0.0; n * n]).expect("fixture")
    }

    /// The four points `u = (0,0)`, `x = (-1,3)`, `y = (2,3)`, `v = (0,6)` of
    /// 1+1 Minkowski space (space, time), with the restricted distance and
    /// `≤` exactly where the distance is positive, plus the diagonal.
    pub fn four_point_diamond() -> FiniteLorentzianSpace {
        let pts = [(0.0, 0.0), (-1.0, 3.0), (2.0, 3.0), (0.0, 6.0)];
        let mut dist = vec![0.0; 16];
        for (i, a) in pts.iter().enumerate() {
            for (j, b) in pts.iter().enumerate() {
                let dt: f64 = b.1 - a.1;
                let dx: f64 = b.0 - a.0;
                if dt > dx.abs() {
                    dist[i * 4 + j] = (dt * dt - dx * dx).sqrt();
                }
            }
        }
        FiniteLorentzianSpace::from_timelike(labels(&["u", "x", "y", "v"]), dist).expect("fixture")
    }

    /// `a ≤ b ≤ d`, `a ≤ c ≤ d` with unit steps and `d(a,d) = 2`.
    pub fn diamond() -> FiniteLorentzianSpace {
        let mut dist = vec![0.0; 16];
        dist[1] = 1.0; // a b
        dist[2] = 1.0; // a c
        dist[3] = 2.0; // a d
        dist[4 + 3] = 1.0; // b d
        dist[8 + 3] = 1.0; // c d
        FiniteLorentzianSpace::from_timelike(labels(&["a", "b", "c", "d"]), dist).expect("fixture")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn chronological_future_of_chain_start() {
        let s = three_chain();
        assert_eq!(s.past_future(0, Sense::Future, RelationKind::Chronological).unwrap(), vec![1, 2]);
        assert_eq!(s.past_future(1, Sense::Past, RelationKind::Causal).unwrap(), vec![0, 1]);
    }

    #[test]
    fn isolated_point_has_empty_chronological_future() {
        let s = antichain(3);
        assert!(s.past_future(1, Sense::Future, RelationKind::Chronological).unwrap().is_empty());
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        let s = three_chain();
        assert!(matches!(
            s.past_future(7, Sense::Future, RelationKind::Causal),
            Err(Error::IndexOutOfRange { index: 7, len: 3 })
        ));
    }

    #[test]
    fn chain_lengths() {
        let s = three_chain();
        assert_eq!(s.chain_length(&[0, 1, 2]).unwrap(), 2.0);
        assert_eq!(s.chain_length(&[0, 2]).unwrap(), 2.0);
        let err = s.chain_length(&[2, 0]).unwrap_err();
        assert_eq!(err.class(), ErrorClass::NonCausalChain);
    }

    #[test]
    fn causality_levels() {
        assert_eq!(three_chain().causality_level(), CausalityLevel::GloballyHyperbolic);
        assert_eq!(two_cycle().causality_level(), CausalityLevel::None);
        assert_eq!(four_point_diamond().causality_level(), CausalityLevel::GloballyHyperbolic);
    }

    #[test]
    fn invariants_of_fixtures() {
        for s in [three_chain(), two_chain(), four_point_diamond(), diamond(), antichain(4)] {
            s.check_invariants(Tolerance::DEFAULT, true).unwrap();
        }
        let err = two_cycle().check_invariants(Tolerance::DEFAULT, true).unwrap_err();
        assert_eq!(err.class(), ErrorClass::Antisymmetry);
        assert_eq!(err.witness(), &[0, 1]);
        two_cycle().check_invariants(Tolerance::DEFAULT, false).unwrap();
    }

    #[test]
    fn timelike_pair_must_be_causal() {
        let s = FiniteLorentzianSpace::new(
            vec!["a".into(), "b".into()],
            vec![0.0, 1.0, 0.0, 0.0],
            Relation::identity(2),
        )
        .unwrap();
        let err = s.check_invariants(Tolerance::DEFAULT, true).unwrap_err();
        assert_eq!(err.class(), ErrorClass::TimelikeNotCausal);
    }

    #[test]
    fn reverse_triangle_violation_is_caught() {
        let mut dist = three_chain().dist_row_major().to_vec();
        dist[2] = 1.5; // d(a,c) < d(a,b) + d(b,c)
        let s = FiniteLorentzianSpace::from_timelike(vec!["a".into(), "b".into(), "c".into()], dist).unwrap();
        let err = s.check_invariants(Tolerance::DEFAULT, true).unwrap_err();
        assert_eq!(err.class(), ErrorClass::ReverseTriangle);
        assert_eq!(err.witness(), &[0, 1, 2]);
    }

    #[test]
    fn negative_distances_are_rejected_at_construction() {
        let r = FiniteLorentzianSpace::from_timelike(vec!["a".into()], vec![-1.0]);
        assert!(matches!(r, Err(Error::Input(_))));
    }

    #[test]
    fn four_point_distances_match_minkowski() {
        let s = four_point_diamond();
        assert!((s.dist(0, 1) - 8f64.sqrt()).abs() < 1e-15);
        assert!((s.dist(0, 2) - 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.dist(1, 2), 0.0);
        assert_eq!(s.dist(2, 1), 0.0);
        assert_eq!(s.dist(0, 3), 6.0);
    }
}
