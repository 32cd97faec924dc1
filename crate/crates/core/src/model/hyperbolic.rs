//! The hyperboloid model of H² inside L^{1+2}.

/// Coordinates `(x0, x1, x2)` of L^{1+2}; `x0` is the time coordinate.
pub type Vec3 = [f64; 3];

/// `v₀`, the base point of the hyperboloid and the reference timelike vector.
pub const BASE_POINT: Vec3 = [1.0, 0.0, 0.0];

/// `⟨u, v⟩ = -u0 v0 + u1 v1 + u2 v2`.
#[inline]
pub fn minkowski_dot(u: &Vec3, v: &Vec3) -> f64 {
    -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Whether `v` lies on the future sheet of `⟨v,v⟩ = -1` up to `tol`.
pub fn on_hyperboloid(v: &Vec3, tol: f64) -> bool {
    (minkowski_dot(v, v) + 1.0).abs() <= tol && minkowski_dot(v, &BASE_POINT) < 0.0
}

/// `arcosh(-⟨u,v⟩)`, evaluated as `2 asinh(|u - v| / 2)` with the spacelike
/// norm of the chord, which stays accurate for nearby points.
#[inline]
pub fn hyperbolic_distance(u: &Vec3, v: &Vec3) -> f64 {
    let w = [u[0] - v[0], u[1] - v[1], u[2] - v[2]];
    let q = minkowski_dot(&w, &w).max(0.0);
    2.0 * (q.sqrt() / 2.0).asinh()
}

/// The point at geodesic polar coordinates `(rho, theta)` around [`BASE_POINT`].
pub fn polar_point(rho: f64, theta: f64) -> Vec3 {
    let s = rho.sinh();
    [rho.cosh(), s * theta.cos(), s * theta.sin()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_points_sit_on_the_hyperboloid_at_the_right_distance() {
        for &(rho, theta) in &[(0.0, 0.0), (0.3, 1.0), (1.0, 2.5), (2.0, -0.7)] {
            let p = polar_point(rho, theta);
            assert!(on_hyperboloid(&p, 1e-12));
            assert!((hyperbolic_distance(&BASE_POINT, &p) - rho).abs() < 1e-12);
            let arcosh = (-minkowski_dot(&BASE_POINT, &p)).acosh();
            assert!((arcosh - rho).abs() < 1e-7);
        }
    }

    #[test]
    fn antipodal_points_are_twice_the_radius_apart() {
        let a = polar_point(0.7, 0.0);
        let b = polar_point(0.7, std::f64::consts::PI);
        assert!((hyperbolic_distance(&a, &b) - 1.4).abs() < 1e-12);
    }

    #[test]
    fn past_sheet_is_rejected() {
        assert!(!on_hyperboloid(&[-1.0, 0.0, 0.0], 1e-12));
    }
}
