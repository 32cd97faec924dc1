use lorentz_cauchy::dj::dj_set;
use lorentz_cauchy::model::{slice, strip_slice, Minkowski2, Strip};
use lorentz_cauchy::Tolerance;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matched_strip_slices_are_their_time_difference_apart(a in 0.01f64..0.99, b in 0.01f64..0.99) {
        let tol = Tolerance::DEFAULT;
        let (sa, sb) = (strip_slice(a, (-1.0, 1.0), 41).unwrap(), strip_slice(b, (-1.0, 1.0), 41).unwrap());
        let d = dj_set(&Strip, &sa, &sb, tol).unwrap().value;
        prop_assert!((d - (a - b).abs()).abs() <= 1e-9, "{d} vs {}", (a - b).abs());
    }

    #[test]
    fn minkowski_slices_satisfy_the_triangle_inequality(a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0) {
        let tol = Tolerance::DEFAULT;
        let s = |t| slice(t, (-1.0, 1.0), 21).unwrap();
        let d = |x: f64, y: f64| dj_set(&Minkowski2, &s(x), &s(y), tol).unwrap().value;
        prop_assert!(d(a, c) <= d(a, b) + d(b, c) + 3.0 * tol.value());
        prop_assert_eq!(d(a, b), d(b, a));
    }
}
