use serde::{Deserialize, Serialize};

use super::LorentzianModel;
use crate::causal::{DistanceKernel, FiniteLorentzianSpace, Relation};
use crate::error::{Error, Result};

/// An event `(t, x)` of 1+1 Minkowski space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub x: f64,
}

impl Event {
    pub const fn new(t: f64, x: f64) -> Self {
        Event { t, x }
    }
}

impl From<(f64, f64)> for Event {
    fn from((t, x): (f64, f64)) -> Self {
        Event { t, x }
    }
}

/// `sqrt((Δt)² - (Δx)²)` when `b` lies in the causal future of `a`, else 0.
#[inline]
pub fn minkowski_distance(a: Event, b: Event) -> f64 {
    let dt = b.t - a.t;
    let dx = (b.x - a.x).abs();
    if dt >= dx {
        ((dt - dx) * (dt + dx)).sqrt()
    } else {
        0.0
    }
}

#[inline]
fn minkowski_causal(a: Event, b: Event) -> bool {
    b.t - a.t >= (b.x - a.x).abs()
}

fn euclidean(a: &Event, b: &Event) -> f64 {
    (a.t - b.t).hypot(a.x - b.x)
}

/// All of 1+1 Minkowski space.
#[derive(Debug, Clone, Copy, Default)]
pub struct Minkowski2;

impl LorentzianModel for Minkowski2 {
    type Point = Event;

    fn distance(&self, a: &Event, b: &Event) -> f64 {
        minkowski_distance(*a, *b)
    }

    fn causal(&self, a: &Event, b: &Event) -> bool {
        minkowski_causal(*a, *b)
    }

    fn scale(&self, p: &Event) -> f64 {
        p.t.hypot(p.x)
    }

    fn chart_distance(&self, a: &Event, b: &Event) -> f64 {
        euclidean(a, b)
    }
}

/// The open strip `(0,1) × R` with the restricted Minkowski structure.
///
/// The strip is causally convex in Minkowski space, so its Lorentzian
/// distance is the ambient one. Points outside the strip can still be
/// evaluated, which lets completeness checks measure escaping sequences.
#[derive(Debug, Clone, Copy, Default)]
pub struct Strip;

impl LorentzianModel for Strip {
    type Point = Event;

    fn distance(&self, a: &Event, b: &Event) -> f64 {
        minkowski_distance(*a, *b)
    }

    fn causal(&self, a: &Event, b: &Event) -> bool {
        minkowski_causal(*a, *b)
    }

    fn contains(&self, p: &Event) -> bool {
        p.t > 0.0 && p.t < 1.0 && p.x.is_finite()
    }

    fn scale(&self, p: &Event) -> f64 {
        p.t.hypot(p.x)
    }

    fn chart_distance(&self, a: &Event, b: &Event) -> f64 {
        euclidean(a, b)
    }
}

/// `samples` events `(t, x_i)` on a uniform grid over `x_range` (inclusive).
pub fn slice(t: f64, x_range: (f64, f64), samples: usize) -> Result<Vec<Event>> {
    if samples == 0 {
        return Err(Error::input("a slice needs at least one sample"));
    }
    let (lo, hi) = x_range;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::input(format!("invalid x range [{lo}, {hi}]")));
    }
    if samples == 1 {
        return Ok(vec![Event::new(t, 0.5 * (lo + hi))]);
    }
    let step = (hi - lo) / (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| {
            let x = if i == samples - 1 { hi } else { lo + step * i as f64 };
            Event::new(t, x)
        })
        .collect())
}

/// A sampled time slice `{t} × [x_range]` of the strip; `t` must lie in `(0,1)`.
pub fn strip_slice(t: f64, x_range: (f64, f64), samples: usize) -> Result<Vec<Event>> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::input(format!("strip slice parameter {t} outside (0,1)")));
    }
    slice(t, x_range, samples)
}

/// Events on a rectangular grid with the given spacing, both ends included.
pub fn grid_events(t_range: (f64, f64), x_range: (f64, f64), step: f64) -> Vec<Event> {
    let nt = ((t_range.1 - t_range.0) / step).floor() as usize + 1;
    let nx = ((x_range.1 - x_range.0) / step).floor() as usize + 1;
    let mut out = Vec::with_capacity(nt * nx);
    for i in 0..nt {
        for j in 0..nx {
            out.push(Event::new(t_range.0 + step * i as f64, x_range.0 + step * j as f64));
        }
    }
    out
}

/// A finite set of Minkowski events exposed as a distance kernel, without
/// materializing the distance matrix.
#[derive(Debug, Clone, Default)]
pub struct EventCloud {
    pub events: Vec<Event>,
}

impl EventCloud {
    pub fn new(events: Vec<Event>) -> Self {
        EventCloud { events }
    }

    /// The induced causal relation `t_j - t_i >= |x_j - x_i|`.
    pub fn causal_relation(&self) -> Relation {
        let e = &self.events;
        Relation::from_fn(e.len(), |i, j| minkowski_causal(e[i], e[j]))
    }

    /// The finite Lorentzian space with the induced distance and causal relation.
    pub fn to_space(&self) -> FiniteLorentzianSpace {
        let n = self.events.len();
        let mut dist = Vec::with_capacity(n * n);
        for a in &self.events {
            for b in &self.events {
                dist.push(minkowski_distance(*a, *b));
            }
        }
        let labels = (0..n).map(|i| format!("e{i}")).collect();
        FiniteLorentzianSpace::new(labels, dist, self.causal_relation()).expect("consistent shapes")
    }
}

impl DistanceKernel for EventCloud {
    fn size(&self) -> usize {
        self.events.len()
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        minkowski_distance(self.events[i], self.events[j])
    }
}

/// `n` uniform events in the box whose pairs are all at least `gap` away
/// from null: `||Δt| - |Δx|| >= gap`. Gives up after `100 n` draws.
pub fn general_position_sample<R: rand::Rng + ?Sized>(
    n: usize,
    t_range: (f64, f64),
    x_range: (f64, f64),
    gap: f64,
    rng: &mut R,
) -> Result<Vec<Event>> {
    if !(t_range.0 < t_range.1 && x_range.0 < x_range.1) {
        return Err(Error::input("empty sampling box"));
    }
    let mut out: Vec<Event> = Vec::with_capacity(n);
    for _ in 0..100 * n.max(1) {
        if out.len() == n {
            break;
        }
        let e = Event::new(rng.gen_range(t_range.0..t_range.1), rng.gen_range(x_range.0..x_range.1));
        if out.iter().all(|o| ((e.t - o.t).abs() - (e.x - o.x).abs()).abs() >= gap) {
            out.push(e);
        }
    }
    if out.len() < n {
        return Err(Error::input(format!("could not place {n} events with null gap {gap}")));
    }
    Ok(out)
}

/// Probe events for the maximal causal relation of a sample: the sample
/// itself, a grid with spacing `step` over the box, and for every sample point
/// events just inside its past and future light cones at several scales.
/// Events rejected by `keep` (e.g. outside the strip) are dropped.
pub fn probe_cloud(
    sample: &[Event],
    t_range: (f64, f64),
    x_range: (f64, f64),
    step: f64,
    keep: impl Fn(&Event) -> bool,
) -> EventCloud {
    let mut events = sample.to_vec();
    events.extend(grid_events(t_range, x_range, step).into_iter().filter(&keep));
    for p in sample {
        for a in [0.001, 0.004, 0.016, 0.064] {
            for (dt, dx) in [(-a, -0.9 * a), (-a, 0.9 * a), (a, -0.9 * a), (a, 0.9 * a)] {
                let z = Event::new(p.t + dt, p.x + dx);
                if keep(&z) {
                    events.push(z);
                }
            }
        }
    }
    EventCloud::new(events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Tolerance;
    use proptest::prelude::*;

    #[test]
    fn distance_examples() {
        let o = Event::new(0.0, 0.0);
        assert_eq!(minkowski_distance(o, Event::new(2.0, 1.0)), 3f64.sqrt());
        assert_eq!(minkowski_distance(o, Event::new(1.0, 1.0)), 0.0);
        assert_eq!(minkowski_distance(o, Event::new(-1.0, 0.0)), 0.0);
        assert_eq!(minkowski_distance(Event::new(0.2, 0.0), Event::new(0.7, 0.0)), 0.7 - 0.2);
    }

    #[test]
    fn strip_slice_grid() {
        let s = strip_slice(0.5, (-1.0, 1.0), 3).unwrap();
        assert_eq!(s, vec![Event::new(0.5, -1.0), Event::new(0.5, 0.0), Event::new(0.5, 1.0)]);
        assert!(strip_slice(1.0, (-1.0, 1.0), 3).is_err());
        assert!(strip_slice(0.0, (-1.0, 1.0), 3).is_err());
    }

    #[test]
    fn cloud_space_is_a_valid_finite_space() {
        let cloud = EventCloud::new(grid_events((0.0, 1.0), (-1.0, 1.0), 0.25));
        cloud.to_space().check_invariants(Tolerance::DEFAULT, true).unwrap();
    }

    #[test]
    fn probes_recover_the_causal_relation_of_a_sample() {
        use crate::causal::maximal_causal_relation_restricted;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let sample = general_position_sample(12, (0.1, 0.9), (-0.5, 0.5), 0.01, &mut rng).unwrap();
        let cloud = probe_cloud(&sample, (0.0, 1.0), (-1.5, 1.5), 0.05, |e| Strip.contains(e));
        let idx: Vec<usize> = (0..sample.len()).collect();
        let jd = maximal_causal_relation_restricted(&cloud, &idx, Tolerance::DEFAULT);
        assert_eq!(jd, EventCloud::new(sample.clone()).causal_relation());
        // without probes spacelike pairs are not separated
        let bare = crate::causal::maximal_causal_relation(&EventCloud::new(sample));
        assert!(bare != jd);
    }

    proptest! {
        #[test]
        fn reverse_triangle_on_rational_events(
            a in (-20i32..20, -20i32..20),
            b in (-20i32..20, -20i32..20),
            c in (-20i32..20, -20i32..20),
        ) {
            let ev = |(t, x): (i32, i32)| Event::new(t as f64 / 4.0, x as f64 / 4.0);
            let (a, b, c) = (ev(a), ev(b), ev(c));
            if minkowski_causal(a, b) && minkowski_causal(b, c) {
                prop_assert!(minkowski_distance(a, b) + minkowski_distance(b, c) <= minkowski_distance(a, c) + 1e-12);
            }
        }
    }
}
