use lorentz_cauchy::model::cone_distance_scalar;
use proptest::prelude::*;

/// Interval between `r_a·(1, 0, 0)` and `r_b·(cosh d, sinh d, 0)` in L^{1+2}.
fn embedded(r_a: f64, r_b: f64, d: f64) -> f64 {
    let (t, x) = (r_b * d.cosh() - r_a, r_b * d.sinh());
    (t * t - x * x).max(0.0).sqrt()
}

proptest! {
    #[test]
    fn agrees_with_the_hyperboloid_embedding(r_a in 0.05f64..5.0, ratio in 1.0f64..20.0, frac in 0.0f64..1.0) {
        let r_b = r_a * ratio;
        let d = frac * ratio.ln();
        let v = cone_distance_scalar(r_a, r_b, d);
        prop_assert!((v - embedded(r_a, r_b, d)).abs() <= 1e-9 * r_b.max(1.0), "{} vs {}", v, embedded(r_a, r_b, d));
    }

    #[test]
    fn vanishes_outside_the_future_cone(r_a in 0.05f64..5.0, ratio in 1.0f64..20.0, extra in 1e-6f64..2.0) {
        prop_assert_eq!(cone_distance_scalar(r_a, r_a * ratio, ratio.ln() + extra), 0.0);
        prop_assert_eq!(cone_distance_scalar(r_a * ratio, r_a, 0.0), 0.0);
    }
}

#[test]
fn apex_and_common_ray() {
    assert_eq!(cone_distance_scalar(0.0, 3.0, 10.0), 3.0);
    assert_eq!(cone_distance_scalar(3.0, 0.0, 0.0), 0.0);
    assert_eq!(cone_distance_scalar(1.5, 4.0, 0.0), 2.5);
}
