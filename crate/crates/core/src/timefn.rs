//! The Cauchy time function `τ = ln(f/g)` on finite Lorentzian spaces.
//!
//! With an enumeration `z_1, z_2, ...` of the points,
//!
//! ```text
//! f(x) = Σ 2^{-k} d(z_k, x) / (1 + d(z_k, x))
//! g(x) = Σ 2^{-k} d(x, z_k) / (1 + d(x, z_k))
//! ```
//!
//! so `f` vanishes exactly on the past boundary and `g` on the future one.

use serde::{Serialize, Serializer};

use crate::causal::{compute_boundaries, verify_distinguishing, FiniteLorentzianSpace};
use crate::error::{Error, ErrorClass, Result};

/// Serializes extended reals with `-inf` / `+inf` spelled out.
pub fn serialize_extended<S: Serializer>(values: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        if v.is_finite() {
            seq.serialize_element(v)?;
        } else {
            seq.serialize_element(format_extended(*v).as_str())?;
        }
    }
    seq.end()
}

/// `-inf`, `+inf`, `nan` or the shortest round-trip decimal.
pub fn format_extended(v: f64) -> String {
    if v == f64::INFINITY {
        "+inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:?}")
    }
}

/// Inverse of [`format_extended`], also accepting `inf` and `-infinity` style spellings.
pub fn parse_extended(s: &str) -> Option<f64> {
    match s.trim().to_ascii_lowercase().as_str() {
        "+inf" | "inf" | "+infinity" | "infinity" => Some(f64::INFINITY),
        "-inf" | "-infinity" => Some(f64::NEG_INFINITY),
        t => t.parse().ok().filter(|v: &f64| !v.is_nan()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TimeFunctionValues {
    pub labels: Vec<String>,
    /// The order `z_1, z_2, ...` used for the weights.
    pub enumeration: Vec<usize>,
    pub f_val: Vec<f64>,
    pub g_val: Vec<f64>,
    #[serde(serialize_with = "serialize_extended")]
    pub tau: Vec<f64>,
}

impl TimeFunctionValues {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }
}

/// Sum of the terms, smallest weight first, with Neumaier compensation.
fn weighted_sum(terms: impl DoubleEndedIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for t in terms.rev() {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

fn saturate(d: f64) -> f64 {
    if d == f64::INFINITY {
        1.0
    } else {
        d / (1.0 + d)
    }
}

/// Builds `f`, `g` and `τ` for `enumeration` (the identity when `None`) and
/// verifies strict monotonicity along `≤` and the boundary characterization.
pub fn build_time_function(space: &FiniteLorentzianSpace, enumeration: Option<&[usize]>) -> Result<TimeFunctionValues> {
    build(space, enumeration, true)
}

/// As [`build_time_function`] without the distinguishing precondition.
/// Indistinguishable points get equal values; monotonicity is still verified.
pub fn build_time_function_relaxed(space: &FiniteLorentzianSpace, enumeration: Option<&[usize]>) -> Result<TimeFunctionValues> {
    build(space, enumeration, false)
}

fn build(space: &FiniteLorentzianSpace, enumeration: Option<&[usize]>, distinguishing: bool) -> Result<TimeFunctionValues> {
    let n = space.len();
    if n == 0 {
        return Err(Error::input("empty space"));
    }
    let enumeration: Vec<usize> = match enumeration {
        Some(e) => {
            let mut seen = vec![false; n];
            for &i in e {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, len: n });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::input(format!("enumeration repeats point {i}")));
                }
            }
            if e.len() != n {
                return Err(Error::input("enumeration must list every point exactly once"));
            }
            e.to_vec()
        }
        None => (0..n).collect(),
    };
    if let Some((x, y)) = verify_distinguishing(space).filter(|_| distinguishing) {
        return Err(Error::invariant(
            ErrorClass::Distinguishing,
            vec![x, y],
            "points are not distinguished by the distance",
        ));
    }
    let boundaries = compute_boundaries(space);
    if let Some(&x) = boundaries.spacelike_boundary.first() {
        return Err(Error::invariant(
            ErrorClass::SpacelikeBoundary,
            boundaries.spacelike_boundary.clone(),
            format!("point {x} lies in both chronological boundaries"),
        ));
    }

    let weights: Vec<f64> = (1..=n as i32).map(|k| 0.5f64.powi(k)).collect();
    let f_val: Vec<f64> = (0..n)
        .map(|x| weighted_sum(enumeration.iter().zip(&weights).map(|(&z, w)| w * saturate(space.dist(z, x)))))
        .collect();
    let g_val: Vec<f64> = (0..n)
        .map(|x| weighted_sum(enumeration.iter().zip(&weights).map(|(&z, w)| w * saturate(space.dist(x, z)))))
        .collect();
    let mut tau = Vec::with_capacity(n);
    for x in 0..n {
        let (f, g) = (f_val[x], g_val[x]);
        if (f == 0.0) != boundaries.is_past_boundary(x) || (g == 0.0) != boundaries.is_future_boundary(x) {
            return Err(Error::invariant(
                ErrorClass::Positivity,
                vec![x],
                "vanishing of f or g disagrees with the chronological boundary",
            ));
        }
        assert!(f > 0.0 || g > 0.0, "spacelike boundary points were rejected above");
        tau.push(if f == 0.0 {
            f64::NEG_INFINITY
        } else if g == 0.0 {
            f64::INFINITY
        } else {
            f.ln() - g.ln()
        });
    }
    for (x, y) in space.causal_relation().pairs() {
        if x != y && !(tau[x] < tau[y]) {
            return Err(Error::invariant(
                ErrorClass::Monotonicity,
                vec![x, y],
                format!("tau({x}) = {} is not below tau({y}) = {}", format_extended(tau[x]), format_extended(tau[y])),
            ));
        }
    }
    Ok(TimeFunctionValues {
        labels: space.labels().to_vec(),
        enumeration,
        f_val,
        g_val,
        tau,
    })
}

/// Covering pairs `x < y` of the causal order (no point strictly between).
pub fn hasse_edges(space: &FiniteLorentzianSpace) -> Vec<(usize, usize)> {
    let n = space.len();
    let lt = |x: usize, y: usize| x != y && space.causal(x, y);
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

/// All maximal chains, each listed from its minimal to its maximal element.
/// Returns `None` once more than `limit` chains have been found.
pub fn maximal_chains(space: &FiniteLorentzianSpace, limit: usize) -> Option<Vec<Vec<usize>>> {
    let n = space.len();
    let mut succ = vec![Vec::new(); n];
    let mut has_pred = vec![false; n];
    for (x, y) in hasse_edges(space) {
        succ[x].push(y);
        has_pred[y] = true;
    }
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).filter(|&x| !has_pred[x]).map(|x| vec![x]).collect();
    while let Some(chain) = stack.pop() {
        let last = chain[chain.len() - 1];
        if succ[last].is_empty() {
            chains.push(chain);
            if chains.len() > limit {
                return None;
            }
            continue;
        }
        for &y in succ[last].iter().rev() {
            let mut next = chain.clone();
            next.push(y);
            stack.push(next);
        }
    }
    Some(chains)
}

/// Crossings of `level` along a chain: points with `τ = level` plus
/// consecutive pairs with `τ(x) < level < τ(y)`.
pub fn chain_crossings(tau: &[f64], chain: &[usize], level: f64) -> usize {
    let points = chain.iter().filter(|&&x| tau[x] == level).count();
    let edges = chain.windows(2).filter(|w| tau[w[0]] < level && level < tau[w[1]]).count();
    points + edges
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelCrossingReport {
    pub level: f64,
    /// Chains whose `τ` range straddles the level, by crossing count (0, 1, 2 or more).
    pub straddling_by_crossings: [f64; 3],
    /// Chains whose `τ` range does not straddle the level.
    pub non_straddling: f64,
    /// A straddling chain that does not cross exactly once.
    pub violation: Option<Vec<usize>>,
    /// A chain whose `τ` range does not straddle the level.
    pub non_straddling_example: Option<Vec<usize>>,
    pub passed: bool,
}

impl LevelCrossingReport {
    pub fn total_chains(&self) -> f64 {
        self.straddling_by_crossings.iter().sum::<f64>() + self.non_straddling
    }
}

const STATES: usize = 6;

/// State index for (start below level, crossings capped at 2).
fn state(below: bool, crossings: usize) -> usize {
    usize::from(below) * 3 + crossings.min(2)
}

/// Checks that every maximal chain with `τ(start) < level < τ(end)` crosses
/// `level` exactly once.
///
/// Chains are counted by dynamic programming over the covering graph rather
/// than enumerated, so the cost is polynomial; counts are reported as
/// floating point because the number of chains can be exponential. One
/// witness chain is recovered for each failure class by backtracking.
pub fn verify_level_crossing(space: &FiniteLorentzianSpace, tf: &TimeFunctionValues, level: f64) -> Result<LevelCrossingReport> {
    if !level.is_finite() {
        return Err(Error::input("level must be finite"));
    }
    let n = space.len();
    if tf.len() != n {
        return Err(Error::input("time function does not match the space"));
    }
    let tau = &tf.tau;
    let edges = hasse_edges(space);
    let mut pred = vec![Vec::new(); n];
    let mut has_succ = vec![false; n];
    for &(x, y) in &edges {
        pred[y].push(x);
        has_succ[x] = true;
    }
    let order = topological_order(n, &edges)?;

    let point_hit = |x: usize| usize::from(tau[x] == level);
    let mut count = vec![[0.0f64; STATES]; n];
    let mut back: Vec<[Option<usize>; STATES]> = vec![[None; STATES]; n];
    for &y in &order {
        if pred[y].is_empty() {
            count[y][state(tau[y] < level, point_hit(y))] += 1.0;
            continue;
        }
        for &x in &pred[y] {
            let step = point_hit(y) + usize::from(tau[x] < level && level < tau[y]);
            for s in 0..STATES {
                if count[x][s] > 0.0 {
                    let below = s >= 3;
                    let t = state(below, s % 3 + step);
                    count[y][t] += count[x][s];
                    back[y][t].get_or_insert(x);
                }
            }
        }
    }

    let trace = |end: usize, s: usize| -> Vec<usize> {
        let mut chain = vec![end];
        let (mut y, mut s) = (end, s);
        while let Some(x) = back[y][s] {
            let step = point_hit(y) + usize::from(tau[x] < level && level < tau[y]);
            let below = s >= 3;
            // find the predecessor state that produced `s`
            let prev = (0..3)
                .map(|c| state(below, c))
                .find(|&p| count[x][p] > 0.0 && state(below, p % 3 + step) == s)
                .expect("backtrack state exists");
            chain.push(x);
            y = x;
            s = prev;
        }
        chain.reverse();
        chain
    };

    let mut by_crossings = [0.0f64; 3];
    let mut non_straddling = 0.0;
    let mut violation = None;
    let mut example = None;
    for end in (0..n).filter(|&y| !has_succ[y]) {
        for s in 0..STATES {
            let c = count[end][s];
            if c == 0.0 {
                continue;
            }
            if s >= 3 && level < tau[end] {
                by_crossings[s % 3] += c;
                if s % 3 != 1 && violation.is_none() {
                    violation = Some(trace(end, s));
                }
            } else {
                non_straddling += c;
                if example.is_none() {
                    example = Some(trace(end, s));
                }
            }
        }
    }
    Ok(LevelCrossingReport {
        level,
        straddling_by_crossings: by_crossings,
        non_straddling,
        passed: violation.is_none(),
        violation,
        non_straddling_example: example,
    })
}

/// Kahn's algorithm; a cycle in the covering graph is an input error.
fn topological_order(n: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    let mut succ = vec![Vec::new(); n];
    for &(x, y) in edges {
        indegree[y] += 1;
        succ[x].push(y);
    }
    let mut ready: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = ready.pop() {
        order.push(x);
        for &y in &succ[x] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                ready.push(y);
            }
        }
    }
    if order.len() < n {
        return Err(Error::input("causal relation has a cycle"));
    }
    Ok(order)
}

/// Levels probing every gap and value of the finite part of `τ`: each finite
/// value, midpoints between consecutive values and one level beyond each end.
pub fn probe_levels(tf: &TimeFunctionValues) -> Vec<f64> {
    let mut finite: Vec<f64> = tf.tau.iter().copied().filter(|v| v.is_finite()).collect();
    finite.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    finite.dedup();
    let Some((&lo, &hi)) = finite.first().zip(finite.last()) else {
        return vec![0.0];
    };
    let mut levels = vec![lo - 1.0];
    for w in finite.windows(2) {
        levels.push(w[0]);
        levels.push(0.5 * (w[0] + w[1]));
    }
    levels.push(hi);
    levels.push(hi + 1.0);
    levels
}
