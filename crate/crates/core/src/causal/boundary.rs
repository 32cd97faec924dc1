use serde::Serialize;

use super::FiniteLorentzianSpace;

/// The four boundary sets of a finite space together with the derived flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundaryReport {
    /// `∂+_ch`: points with empty chronological future.
    pub future_chronological: Vec<usize>,
    /// `∂-_ch`: points with empty chronological past.
    pub past_chronological: Vec<usize>,
    /// `∂+_ca`: points whose causal future is the point itself.
    pub future_causal: Vec<usize>,
    /// `∂-_ca`: points whose causal past is the point itself.
    pub past_causal: Vec<usize>,
    /// True iff causal and chronological boundaries agree on both sides.
    pub bubbling_empty: bool,
    /// `∂+_ch ∩ ∂-_ch`.
    pub spacelike_boundary: Vec<usize>,
}

impl BoundaryReport {
    pub fn is_future_boundary(&self, x: usize) -> bool {
        self.future_chronological.binary_search(&x).is_ok()
    }

    pub fn is_past_boundary(&self, x: usize) -> bool {
        self.past_chronological.binary_search(&x).is_ok()
    }
}

pub fn compute_boundaries(space: &FiniteLorentzianSpace) -> BoundaryReport {
    let n = space.len();
    let all = 0..n;
    let future_chronological: Vec<usize> = all.clone().filter(|&x| (0..n).all(|y| !space.timelike(x, y))).collect();
    let past_chronological: Vec<usize> = all.clone().filter(|&x| (0..n).all(|y| !space.timelike(y, x))).collect();
    let future_causal: Vec<usize> = all
        .clone()
        .filter(|&x| (0..n).all(|y| y == x || !space.causal(x, y)))
        .collect();
    let past_causal: Vec<usize> = all.filter(|&x| (0..n).all(|y| y == x || !space.causal(y, x))).collect();
    let bubbling_empty = future_causal == future_chronological && past_causal == past_chronological;
    let spacelike_boundary = future_chronological
        .iter()
        .copied()
        .filter(|x| past_chronological.binary_search(x).is_ok())
        .collect();
    BoundaryReport {
        future_chronological,
        past_chronological,
        future_causal,
        past_causal,
        bubbling_empty,
        spacelike_boundary,
    }
}
