use proptest::prelude::*;
use unruh_core::*;

fn params() -> ModelParams {
    ModelParams::from_gamma(1.0, 2.0, 0.1).unwrap()
}

/// A point in P ∪ L, bounded away from the horizons.
fn past_or_left() -> impl Strategy<Value = SpacetimePoint> {
    (0.05f64..4.0, 0.05f64..4.0, any::<bool>()).prop_map(|(x, y, past)| {
        let u = if past { -x } else { x };
        SpacetimePoint { u, v: -y }
    })
}

/// A point in F ∪ R at least 0.05 from the trajectory and horizons, with
/// every phase argument inside the supported range.
fn forward() -> impl Strategy<Value = SpacetimePoint> {
    (-3.0f64..3.0, 0.06f64..3.0)
        .prop_filter("off the singular set", |&(u, v)| {
            u.abs() > 0.06 && (1.0 + u * v).abs() > 0.06
        })
        .prop_map(|(u, v)| SpacetimePoint { u, v })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn causality_zero_without_quadrature(p in past_or_left(), q in past_or_left()) {
        let r = delta_two_point(p, q, &params(), &QuadratureSpec::default()).unwrap();
        prop_assert_eq!(r.value, ComplexValue::new(0.0, 0.0));
        prop_assert_eq!(r.evaluations, 0);
        prop_assert!(r.terms_active.is_empty());
    }

    #[test]
    fn hermitian(p in forward(), q in forward()) {
        let spec = QuadratureSpec::default();
        let a = delta_two_point(p, q, &params(), &spec).unwrap();
        let b = delta_two_point(q, p, &params(), &spec).unwrap();
        prop_assert!((a.value - b.value.conj()).norm() < 1e-9 + 10.0 * a.error_estimate);
    }

    #[test]
    fn polarization_is_static(p in forward(), tau in -1.5f64..1.5) {
        // Boosting along the trajectory keeps a²uv fixed.
        let spec = QuadratureSpec::default();
        let e = tau.exp();
        let boosted = SpacetimePoint { u: p.u / e, v: p.v * e };
        prop_assume!(boosted.v > 0.06 && boosted.v < 40.0 && boosted.u.abs() > 0.06);
        let c0 = coincidence_delta_phi_sq(p, &params(), &spec).unwrap();
        let c1 = coincidence_delta_phi_sq(boosted, &params(), &spec).unwrap();
        prop_assert!((c0.value - c1.value).abs() <= 1e-6 * c0.value.abs().max(1e-12));
    }

    #[test]
    fn stress_vanishes_and_cross_check_agrees(p in forward()) {
        let s = stress_at(p, &params(), &QuadratureSpec::default(), 1e-3).unwrap();
        prop_assert_eq!(s.t_uv, 0.0);
        prop_assert!(s.t_uu.abs() <= 1e-6 && s.t_vv.abs() <= 1e-6);
        if let Some(check) = s.cross_check {
            prop_assert!((check.t_uu - s.t_uu).abs() <= 1e-6);
            prop_assert!((check.t_vv - s.t_vv).abs() <= 1e-6);
        }
    }
}

#[test]
fn polarization_vanishes_for_negative_v() {
    let spec = QuadratureSpec::default();
    for (u, v) in [(-1.0, -0.5), (2.0, -0.3), (0.3, -2.0)] {
        let c = coincidence_delta_phi_sq(SpacetimePoint { u, v }, &params(), &spec).unwrap();
        assert_eq!(c.value, 0.0);
    }
}

#[test]
fn degenerate_tube_has_no_flux() {
    let tube = WorldTube::new(0.5, -0.5, 0.3, 0.3).unwrap();
    let f = world_tube_flux(tube, &params(), &QuadratureSpec::default(), 8).unwrap();
    assert_eq!(f.value, 0.0);
}

#[test]
fn default_tube_has_no_flux() {
    let tube = WorldTube::new(0.5, -0.5, -1.0, 1.0).unwrap();
    let f = world_tube_flux(tube, &params(), &QuadratureSpec::default(), 8).unwrap();
    assert!(f.value.abs() <= f.error_estimate + 1e-6, "{f:?}");
}

/// `∂_u∂_{u′}` (or `∂_v∂_{v′}`) of the full correlator at coincidence by a
/// centred four-point stencil, with no knowledge of which terms survive.
fn mixed_derivative(p: SpacetimePoint, along_u: bool, h: f64, g: impl Fn(SpacetimePoint, SpacetimePoint) -> f64) -> f64 {
    let shift = |s: f64| {
        if along_u {
            SpacetimePoint { u: p.u + s, v: p.v }
        } else {
            SpacetimePoint { u: p.u, v: p.v + s }
        }
    };
    (g(shift(h), shift(h)) - g(shift(h), shift(-h)) - g(shift(-h), shift(h)) + g(shift(-h), shift(-h)))
        / (4.0 * h * h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stress_from_full_correlator_vanishes(p in forward()) {
        let spec = QuadratureSpec::default();
        let g = |x, y| delta_two_point(x, y, &params(), &spec).unwrap().value.re;
        for along_u in [true, false] {
            let t = mixed_derivative(p, along_u, 1e-2, g);
            prop_assert!(t.abs() <= 1e-6, "T = {t} at {p:?}");
        }
    }
}
