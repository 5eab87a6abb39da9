use multibrot_core::angles::orbit_info;
use multibrot_core::boettcher::green_parameter;
use multibrot_core::rays::{trace_parameter_ray, DEFAULT_FLOOR, DEFAULT_STEPS, DEFAULT_TOL};
use multibrot_core::{Angle, Complex64};
use proptest::prelude::*;

/// A periodic angle `p / (d^n - 1)` for small `n`.
fn periodic_angle() -> impl Strategy<Value = (u32, Angle)> {
    (2u32..=4, 2u32..=4)
        .prop_flat_map(|(d, n)| {
            let q = (d as i64).pow(n) - 1;
            (Just(d), 1..q, Just(q))
        })
        .prop_map(|(d, p, q)| (d, Angle::frac(p, q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn potentials_decrease_and_match_green((d, theta) in periodic_angle()) {
        let r = trace_parameter_ray(d, &theta, 1e-10, DEFAULT_STEPS).unwrap();
        for w in r.samples.windows(2) {
            prop_assert!(w[1].potential < w[0].potential);
        }
        for s in &r.samples {
            let g = green_parameter(d, s.point, 1 << 20, 1e3).value;
            prop_assert!((g - s.potential).abs() < 1e-6, "{} {:?} {}", theta, s, g);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn conjugate_angles_land_at_conjugate_points((d, theta) in periodic_angle()) {
        prop_assume!(orbit_info(d, &theta).preperiod == 0);
        let r = trace_parameter_ray(d, &theta, DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
        let s = trace_parameter_ray(d, &theta.neg(), DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
        prop_assert!((r.landing_estimate.conj() - s.landing_estimate).norm() < 2.0 * DEFAULT_TOL);
    }

    #[test]
    fn rotated_angles_land_at_rotated_points((d, theta) in periodic_angle(), j in 1i64..3) {
        prop_assume!(d >= 3 && j < d as i64 - 1);
        let xi = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / (d - 1) as f64);
        let r = trace_parameter_ray(d, &theta, DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
        let rotated = theta.add(&Angle::frac(j, d as i64 - 1));
        let s = trace_parameter_ray(d, &rotated, DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
        prop_assert!((xi * r.landing_estimate - s.landing_estimate).norm() < 2.0 * DEFAULT_TOL);
    }
}
