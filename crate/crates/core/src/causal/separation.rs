use crate::error::{Error, ErrorClass, Result};
use crate::Tolerance;

use super::FiniteLorentzianSpace;

/// Addition on `{-inf} ∪ [0, +inf]` with the convention `-inf + inf = -inf`.
#[inline]
pub fn extended_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else {
        a + b
    }
}

/// An extended time separation `ℓ` on the points `0..n`.
///
/// Values are `-inf` for causally unrelated ordered pairs and a nonnegative
/// number (possibly `+inf`) otherwise. The associated Lorentzian distance is
/// `max(0, ℓ)` and the causal relation is `ℓ >= 0`.
pub struct ExtendedTimeSeparation<F> {
    n: usize,
    eval: F,
    tolerance: Tolerance,
}

impl<F> ExtendedTimeSeparation<F>
where
    F: Fn(usize, usize) -> f64,
{
    pub fn new(n: usize, eval: F, tolerance: Tolerance) -> Self {
        ExtendedTimeSeparation { n, eval, tolerance }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> f64 {
        (self.eval)(x, y)
    }

    #[inline]
    pub fn lorentzian_distance(&self, x: usize, y: usize) -> f64 {
        self.value(x, y).max(0.0)
    }

    #[inline]
    pub fn causal(&self, x: usize, y: usize) -> bool {
        self.value(x, y) >= 0.0
    }

    #[inline]
    pub fn timelike(&self, x: usize, y: usize) -> bool {
        self.value(x, y) > 0.0
    }

    /// Checks `ℓ(x,x) >= 0`, finiteness, and the extended reverse triangle
    /// inequality on all triples. Reports the first failure in lexicographic order.
    pub fn verify(&self) -> Result<()> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let v = self.value(x, y);
                if v.is_nan() || (v < 0.0 && v != f64::NEG_INFINITY) {
                    return Err(Error::invariant(
                        ErrorClass::Input,
                        vec![x, y],
                        format!("value {v} outside {{-inf}} ∪ [0, inf]"),
                    ));
                }
                if v == f64::INFINITY {
                    return Err(Error::invariant(
                        ErrorClass::InfiniteSeparation,
                        vec![x, y],
                        "infinite time separation is not supported by the verifiers",
                    ));
                }
            }
            if self.value(x, x) < 0.0 {
                return Err(Error::invariant(
                    ErrorClass::Reflexivity,
                    vec![x],
                    "ℓ(x,x) < 0",
                ));
            }
        }
        let tol = self.tolerance.value();
        for x in 0..n {
            for y in 0..n {
                let lxy = self.value(x, y);
                if lxy == f64::NEG_INFINITY {
                    continue;
                }
                for z in 0..n {
                    let lhs = extended_add(lxy, self.value(y, z));
                    let rhs = self.value(x, z);
                    if lhs > rhs + tol {
                        return Err(Error::invariant(
                            ErrorClass::ReverseTriangle,
                            vec![x, y, z],
                            format!("ℓ(x,y) + ℓ(y,z) = {lhs} > ℓ(x,z) = {rhs}"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

impl FiniteLorentzianSpace {
    /// The extended time separation of the space: `dist` on causal pairs, `-inf` elsewhere.
    pub fn time_separation(&self, tolerance: Tolerance) -> ExtendedTimeSeparation<impl Fn(usize, usize) -> f64 + '_> {
        ExtendedTimeSeparation::new(
            self.len(),
            move |x, y| {
                if self.causal(x, y) {
                    self.dist(x, y)
                } else {
                    f64::NEG_INFINITY
                }
            },
            tolerance,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_addition_absorbs_negative_infinity() {
        assert_eq!(extended_add(f64::NEG_INFINITY, f64::INFINITY), f64::NEG_INFINITY);
        assert_eq!(extended_add(f64::INFINITY, f64::NEG_INFINITY), f64::NEG_INFINITY);
        assert_eq!(extended_add(1.0, 2.0), 3.0);
    }

    #[test]
    fn chain_separation_is_valid() {
        let space = crate::causal::fixtures::three_chain();
        let sep = space.time_separation(Tolerance::DEFAULT);
        sep.verify().unwrap();
        assert_eq!(sep.value(2, 0), f64::NEG_INFINITY);
        assert_eq!(sep.lorentzian_distance(2, 0), 0.0);
        assert!(sep.timelike(0, 2));
    }

    #[test]
    fn infinite_values_are_rejected() {
        let sep = ExtendedTimeSeparation::new(
            2,
            |x, y| if x == y { 0.0 } else if x < y { f64::INFINITY } else { f64::NEG_INFINITY },
            Tolerance::DEFAULT,
        );
        let err = sep.verify().unwrap_err();
        assert_eq!(err.class(), ErrorClass::InfiniteSeparation);
    }

    #[test]
    fn reverse_triangle_failure_is_reported_with_triple() {
        // ℓ(0,1) + ℓ(1,2) = 2 > ℓ(0,2) = 1
        let m = [[0.0, 1.0, 1.0], [f64::NEG_INFINITY, 0.0, 1.0], [f64::NEG_INFINITY, f64::NEG_INFINITY, 0.0]];
        let sep = ExtendedTimeSeparation::new(3, |x, y| m[x][y], Tolerance::DEFAULT);
        let err = sep.verify().unwrap_err();
        assert_eq!(err.class(), ErrorClass::ReverseTriangle);
        assert_eq!(err.witness(), &[0, 1, 2]);
    }
}
