//! Sampled causal curves and the completeness conditions built on them.

mod checks;
mod crossing;
mod generate;

pub use checks::{
    cauchy_complete_check, classify_trend, finite_compactness_check, finite_compactness_check_finite,
    inextendibility_check, timelike_cauchy_completeness_check, timelike_cauchy_completeness_finite,
    CompactnessVerdict, CompletenessReport, EndCompleteness, EndVerdict, InextendibilityReport,
    TimelikeCompleteness, Trend,
};
pub use crossing::{crossing_count, CrossingReport};
pub use generate::{radial_ray, random_timelike_curve, sinh_curve, violation_witness_curve};

use serde::{Deserialize, Serialize};

use crate::error::{Error, ErrorClass, Result};
use crate::model::LorentzianModel;

/// How a sampled curve behaves beyond its first or last sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EndBehavior<P> {
    /// The extreme sample is the endpoint of the curve.
    AttainedEndpoint,
    EscapesToInfinity,
    /// The curve converges to the given point, which need not belong to the model.
    ApproachesBoundary(P),
}

impl<P> EndBehavior<P> {
    pub fn label(&self) -> &'static str {
        match self {
            EndBehavior::AttainedEndpoint => "attainedEndpoint",
            EndBehavior::EscapesToInfinity => "escapesToInfinity",
            EndBehavior::ApproachesBoundary(_) => "approachesBoundary",
        }
    }
}

/// A future-directed curve given by samples `(t, γ(t))` with increasing `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteCausalCurve<P> {
    samples: Vec<(f64, P)>,
    past: EndBehavior<P>,
    future: EndBehavior<P>,
    timelike: bool,
}

impl<P: Clone> DiscreteCausalCurve<P> {
    /// Checks that parameters increase strictly and consecutive samples are
    /// causally related, with positive distance when `timelike` is set.
    pub fn new<M: LorentzianModel<Point = P>>(
        model: &M,
        samples: Vec<(f64, P)>,
        past: EndBehavior<P>,
        future: EndBehavior<P>,
        timelike: bool,
    ) -> Result<Self> {
        let curve = DiscreteCausalCurve { samples, past, future, timelike };
        curve.validate(model)?;
        Ok(curve)
    }

    pub fn validate<M: LorentzianModel<Point = P>>(&self, model: &M) -> Result<()> {
        if self.samples.is_empty() {
            return Err(Error::input("a curve needs at least one sample"));
        }
        for (k, w) in self.samples.windows(2).enumerate() {
            let ((s, a), (t, b)) = (&w[0], &w[1]);
            if !(t > s) {
                return Err(Error::invariant(
                    ErrorClass::Monotonicity,
                    vec![k, k + 1],
                    format!("curve parameters {s} and {t} are not increasing"),
                ));
            }
            if !model.causal(a, b) {
                return Err(Error::invariant(
                    ErrorClass::NonCausalChain,
                    vec![k, k + 1],
                    "consecutive samples are not causally related",
                ));
            }
            if self.timelike && !(model.distance(a, b) > 0.0) {
                return Err(Error::invariant(
                    ErrorClass::NonCausalChain,
                    vec![k, k + 1],
                    "consecutive samples of a timelike curve are not timelike related",
                ));
            }
        }
        Ok(())
    }

    pub fn samples(&self) -> &[(f64, P)] {
        &self.samples
    }

    pub fn points(&self) -> impl Iterator<Item = &P> {
        self.samples.iter().map(|(_, p)| p)
    }

    pub fn past(&self) -> &EndBehavior<P> {
        &self.past
    }

    pub fn future(&self) -> &EndBehavior<P> {
        &self.future
    }

    pub fn is_timelike(&self) -> bool {
        self.timelike
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sum of consecutive distances: the length of the sampled chain.
    pub fn chain_length<M: LorentzianModel<Point = P>>(&self, model: &M) -> f64 {
        self.samples.windows(2).map(|w| model.distance(&w[0].1, &w[1].1)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Event, Minkowski2};

    #[test]
    fn construction_checks_order_and_causality() {
        let ok = vec![(0.0, Event::new(0.0, 0.0)), (1.0, Event::new(1.0, 0.5))];
        let c = DiscreteCausalCurve::new(&Minkowski2, ok, EndBehavior::AttainedEndpoint, EndBehavior::AttainedEndpoint, true)
            .unwrap();
        assert!((c.chain_length(&Minkowski2) - 0.75f64.sqrt()).abs() < 1e-12);
        let null = vec![(0.0, Event::new(0.0, 0.0)), (1.0, Event::new(1.0, 1.0))];
        assert!(DiscreteCausalCurve::new(&Minkowski2, null.clone(), EndBehavior::AttainedEndpoint, EndBehavior::AttainedEndpoint, true).is_err());
        assert!(DiscreteCausalCurve::new(&Minkowski2, null, EndBehavior::AttainedEndpoint, EndBehavior::AttainedEndpoint, false).is_ok());
        let back = vec![(1.0, Event::new(0.0, 0.0)), (0.0, Event::new(1.0, 0.0))];
        let err = DiscreteCausalCurve::new(&Minkowski2, back, EndBehavior::AttainedEndpoint, EndBehavior::AttainedEndpoint, true)
            .unwrap_err();
        assert_eq!(err.class(), ErrorClass::Monotonicity);
        let spacelike = vec![(0.0, Event::new(0.0, 0.0)), (1.0, Event::new(0.0, 1.0))];
        let err = DiscreteCausalCurve::new(&Minkowski2, spacelike, EndBehavior::AttainedEndpoint, EndBehavior::AttainedEndpoint, false)
            .unwrap_err();
        assert_eq!(err.class(), ErrorClass::NonCausalChain);
    }
}
