//! Limits of finite sequence prefixes.
//!
//! A sequence `y_1, ..., y_N` is modelled as a function of `h = 1/k`. The
//! estimate at `h = 0` is the best of the last iterate and polynomial
//! (Richardson) extrapolants of increasing order through the last few
//! iterates, ranked by how far each one moves from the next lower order.

/// Maximum polynomial order used in extrapolation.
pub const MAX_ORDER: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate {
    pub value: f64,
    /// Disagreement with the neighbouring lower-order estimate.
    pub error: f64,
    pub order: usize,
}

/// Neville evaluation at zero of the interpolating polynomial through `(h_i, y_i)`.
pub fn neville_at_zero(h: &[f64], y: &[f64]) -> f64 {
    assert_eq!(h.len(), y.len());
    let mut p = y.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
        }
    }
    p[0]
}

/// Limit estimate of `y_k`, `k = 1..=N`, as `k → ∞`. Returns `None` for an
/// empty input or non-finite values.
pub fn limit(y: &[f64]) -> Option<LimitEstimate> {
    limit_from(y, 1)
}

/// As [`limit`], for a sequence whose first term has index `first_index`.
pub fn limit_from(y: &[f64], first_index: usize) -> Option<LimitEstimate> {
    let n = y.len();
    if first_index == 0 {
        return None;
    }
    if n == 0 || y.iter().any(|v| !v.is_finite()) {
        return None;
    }
    if n == 1 {
        return Some(LimitEstimate { value: y[0], error: f64::INFINITY, order: 0 });
    }
    let h: Vec<f64> = (0..n).map(|k| 1.0 / (first_index + k) as f64).collect();
    let mut estimates = vec![y[n - 1]];
    for order in 1..=MAX_ORDER.min(n - 1) {
        let lo = n - order - 1;
        estimates.push(neville_at_zero(&h[lo..], &y[lo..]));
    }
    let last_step = (y[n - 1] - y[n - 2]).abs();
    let mut best = LimitEstimate { value: y[n - 1], error: last_step, order: 0 };
    for order in 1..estimates.len() {
        let err = (estimates[order] - estimates[order - 1]).abs();
        if err < best.error {
            best = LimitEstimate { value: estimates[order], error: err, order };
        }
    }
    Some(best)
}

/// Componentwise limit of a sequence of coordinate vectors.
pub fn limit_vector(seq: &[Vec<f64>], first_index: usize) -> Option<(Vec<f64>, f64)> {
    let dim = seq.first()?.len();
    if seq.iter().any(|v| v.len() != dim) {
        return None;
    }
    let mut value = Vec::with_capacity(dim);
    let mut error: f64 = 0.0;
    for c in 0..dim {
        let column: Vec<f64> = seq.iter().map(|v| v[c]).collect();
        let est = limit_from(&column, first_index)?;
        value.push(est.value);
        error = error.max(est.error);
    }
    Some((value, error))
}
