use std::f64::consts::PI;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use superhyp::areaforms::{area_form_value, edge_integral_closed};
use superhyp::geodesics::GeodesicSegment;
use superhyp::numcheck::{
    adaptive_simpson, analytic_slope, ideal_divergence, normalize_ideal, quad_edge, stokes_loop, truncated_area, IdealTriple,
    EVALUATION_BUDGET,
};
use superhyp::sampling::Sampler;
use superhyp::{Error, SuperNumber, SuperPoint};

const N: usize = 6;

fn c(v: f64) -> SuperNumber {
    SuperNumber::constant(N, v)
}

fn bos(x1: f64, y: f64) -> SuperPoint {
    SuperPoint::bosonic(N, x1, (1.0 + y * y) / x1, y)
}

/// Light-cone point over boundary angle `θ`, `(1 − cos θ, 1 + cos θ, sin θ)`.
fn boundary(theta: f64) -> SuperPoint {
    SuperPoint::bosonic(N, 1.0 - theta.cos(), 1.0 + theta.cos(), theta.sin())
}

fn classical_triple() -> IdealTriple {
    let [e, f, g] = [0.9, 2.9, 4.9].map(boundary);
    normalize_ideal(&e, &f, &g, 1e-12).unwrap()
}

#[test]
fn simpson_integrates_polynomials_and_transcendentals() {
    let r = adaptive_simpson(|x: f64| Ok(c(x * x * x)), 0.0, 2.0, 1e-12, EVALUATION_BUDGET).unwrap();
    assert!((r.value.body() - 4.0).abs() < 1e-12);
    let r = adaptive_simpson(|x: f64| Ok(c(x.sin())), 0.0, PI, 1e-12, EVALUATION_BUDGET).unwrap();
    assert!((r.value.body() - 2.0).abs() < 1e-11);
    assert!(r.estimated_error < 1e-12);
    assert!(r.value.is_even());
}

#[test]
fn simpson_reports_an_exhausted_budget() {
    let r = adaptive_simpson(|x: f64| Ok(c((1.0 / (x + 1e-9)).sin())), 0.0, 1.0, 1e-14, 2_000);
    assert!(matches!(r, Err(Error::ToleranceNotMet { .. })));
}

#[test]
fn zero_length_limit_is_small() {
    let p = bos(1.0, 0.3);
    let seg = GeodesicSegment::through(&p, &p.scale_real(1.0)).err();
    assert!(seg.is_some(), "a point with itself is not a segment");
    for eps in [1e-2, 1e-3] {
        let q = GeodesicSegment::through(&p, &bos(1.0 + 1.0, 0.3)).unwrap().point_at_fraction(eps);
        let r = quad_edge(&GeodesicSegment::through(&p, &q).unwrap(), 1e-12).unwrap();
        assert!(r.value.max_abs() < 10.0 * eps, "eps {eps}: {}", r.value.max_abs());
    }
}

#[test]
fn bosonic_and_decorated_edges_match_the_closed_form() {
    let seg = GeodesicSegment::through(&bos(1.0, 0.2), &bos(2.5, -0.7)).unwrap();
    let q = quad_edge(&seg, 1e-11).unwrap();
    assert!(q.value.approx_eq(&edge_integral_closed(&seg).unwrap().0, 1e-9));

    let mut s = Sampler::new(31, N);
    for _ in 0..5 {
        let (p, r): (SuperPoint, SuperPoint) = s.edge(true);
        let seg = GeodesicSegment::through(&p, &r).unwrap();
        let q = quad_edge(&seg, 1e-10).unwrap();
        assert!(q.estimated_error < 1e-10);
        assert!(q.value.approx_eq(&edge_integral_closed(&seg).unwrap().0, 1e-8));
    }
}

#[test]
fn halving_the_tolerance_keeps_the_discrepancy_within_it() {
    // the error of adaptive Simpson is not strictly monotone in tol (it can wobble far below tol),
    // so each halving must keep the discrepancy under the new tolerance and the sweep must converge
    let mut s = Sampler::new(32, N);
    for _ in 0..5 {
        let (p, r): (SuperPoint, SuperPoint) = s.edge(true);
        let seg = GeodesicSegment::through(&p, &r).unwrap();
        let exact = edge_integral_closed(&seg).unwrap().0;
        let mut tol = 1e-4;
        let first = quad_edge(&seg, tol).unwrap().value.max_abs_diff(&exact);
        let mut last = first;
        while tol > 1e-11 {
            tol /= 2.0;
            last = quad_edge(&seg, tol).unwrap().value.max_abs_diff(&exact);
            assert!(last <= tol.max(1e-13), "tol {tol:e}: discrepancy {last:e}");
        }
        assert!(last <= (first * 1e-3).max(1e-12), "{first:e} -> {last:e}");
    }
}

#[test]
fn stokes_degenerate_loop_has_no_circulation() {
    let mut s = Sampler::new(33, N);
    let x: SuperPoint = s.ih_point(true);
    let v = s.tangent(&x);
    let (circ, form) = stokes_loop(&x, &v, &v.scale_real(2.0), 1e-3).unwrap();
    assert!(circ.max_abs() < 1e-12);
    assert!(form.max_abs() < 1e-15);
}

#[test]
fn stokes_bosonic_ratio() {
    let x = bos(1.3, 0.4);
    let v1 = SuperPoint::bosonic(N, 1.0, 0.0, 0.0);
    let v2 = SuperPoint::bosonic(N, 0.0, 0.0, 1.0);
    let (v1, v2) = (v1.sub(&x.scale(&x.pairing(&v1))), v2.sub(&x.scale(&x.pairing(&v2))));
    let (circ, form) = stokes_loop(&x, &v1, &v2, 1e-3).unwrap();
    assert!((circ.body() / form.body() - 1.0).abs() < 1e-4);
}

#[test]
fn stokes_decorated_ratio_is_coefficientwise() {
    let mut s = Sampler::new(34, N);
    for _ in 0..3 {
        let x: SuperPoint = s.ih_point(true);
        let (v1, v2) = (s.tangent(&x), s.tangent(&x));
        let (circ, form) = stokes_loop(&x, &v1, &v2, 1e-3).unwrap();
        let floor = 1e-3 * form.max_abs();
        for (mask, f) in form.terms() {
            if f.abs() > floor {
                let ratio = circ.coefficient_mask(*mask) / f;
                assert!((ratio - 1.0).abs() < 1e-3, "mask {mask:b}: ratio {ratio}");
            }
        }
        // and the loop agrees with the form to second order in h
        let (circ2, form2) = stokes_loop(&x, &v1, &v2, 2e-3).unwrap();
        let e1 = circ.max_abs_diff(&form) / form.max_abs();
        let e2 = circ2.max_abs_diff(&form2) / form2.max_abs();
        assert!(e2 / e1 > 3.0 && e2 / e1 < 5.0, "order ratio {}", e2 / e1);
        assert!(area_form_value(&x, &v1, &v2).unwrap().scale(1e-6).approx_eq(&form, 1e-18));
    }
}

#[test]
fn normalize_ideal_examples() {
    let t = classical_triple();
    assert!(t.residual() < 1e-12);
    let again = normalize_ideal(&t.e, &t.f, &t.g, 1e-12).unwrap();
    assert!(again.e.max_abs_diff(&t.e) < 1e-14 && again.f.max_abs_diff(&t.f) < 1e-14 && again.g.max_abs_diff(&t.g) < 1e-14);

    // rescaling one input vertex does not change the normalized triple
    let scaled = normalize_ideal(&t.e.scale_real(3.7), &t.f, &t.g, 1e-12).unwrap();
    assert!(scaled.e.max_abs_diff(&t.e) < 1e-13 && scaled.g.max_abs_diff(&t.g) < 1e-13);

    let mut s = Sampler::new(35, N);
    let pts: [SuperPoint; 3] = std::array::from_fn(|k| s.light_cone_at(0.8 + 2.0 * k as f64, 1.0 + k as f64, true));
    let d = normalize_ideal(&pts[0], &pts[1], &pts[2], 1e-12).unwrap();
    for (a, b) in [(&d.e, &d.f), (&d.f, &d.g), (&d.g, &d.e)] {
        assert!(a.pairing(b).approx_eq(&c(2.0), 1e-9));
    }

    assert!(normalize_ideal(&bos(1.0, 0.0), &t.f, &t.g, 1e-9).is_err());
    // future light-cone points pair to zero only when proportional
    assert!(matches!(normalize_ideal(&t.e, &t.e.scale_real(2.0), &t.g, 1e-9), Err(Error::NonPositivePairing(_))));
    assert!(matches!(normalize_ideal(&t.e, &t.f.scale_real(-1.0), &t.g, 1e-9), Err(Error::ConstraintViolation { .. })));
}

#[test]
fn classical_ideal_body_approaches_pi_like_one_over_t() {
    let t = classical_triple();
    let cutoffs = [1e2, 1e3, 1e4];
    let report = ideal_divergence(&t, &cutoffs, 1e-11).unwrap();
    assert!(report.body_residual.windows(2).all(|w| w[1] < w[0]));
    for (cut, r) in cutoffs.iter().zip(&report.body_residual) {
        // three edges, two ends each, each contributing 1/T
        assert!((r * cut - 6.0).abs() < 0.1, "T {cut}: T·residual = {}", r * cut);
    }
    assert!(report.partials.iter().all(|p| p.soul().is_zero()));
    assert!(report.dominant.is_none());
}

#[test]
fn decorated_ideal_triangle_diverges_linearly() {
    let mut s = Sampler::new(36, N);
    let t: IdealTriple = s.ideal_triple(true);
    let report = ideal_divergence(&t, &[1e3, 1e4], 1e-10).unwrap();
    for r in &report.growth_ratio {
        assert!((r - 2.0).abs() < 0.1, "growth ratio {r}");
    }
    assert!(report.slope_relative_error.unwrap() < 0.05);
    assert!(report.analytic_slope.body() == 0.0);
    assert!(!report.truncation.is_empty());
}

#[test]
fn bounded_part_converges_like_one_over_t() {
    let mut s = Sampler::new(37, N);
    let t: IdealTriple = s.ideal_triple(true);
    let slope = analytic_slope(&t).unwrap();
    let bounded = |cut: f64| &truncated_area(&t, cut, 1e-11).unwrap() - &slope.scale(cut);
    let change_3 = bounded(2e3).max_abs_diff(&bounded(1e3));
    let change_4 = bounded(2e4).max_abs_diff(&bounded(1e4));
    assert!((change_3 / change_4 - 10.0).abs() < 0.5, "{change_3:e} vs {change_4:e}");
}

#[test]
fn forced_proviso_violation_is_an_error() {
    // boundary angles θ and 2π − θ share cos θ, so p1 q2 − p2 q1 = 2(cos β − cos α) vanishes on that edge
    let [e, f, g] = [1.0, 2.0 * PI - 1.0, PI].map(boundary);
    let t = normalize_ideal(&e, &f, &g, 1e-12).unwrap();
    assert!(matches!(ideal_divergence(&t, &[1e2], 1e-8), Err(Error::GenericityViolation(_))));
    assert!(matches!(ideal_divergence(&classical_triple(), &[], 1e-8), Err(Error::DegenerateConfiguration(_))));
    assert!(matches!(ideal_divergence(&classical_triple(), &[0.5], 1e-8), Err(Error::DegenerateConfiguration(_))));
}

/// Fixed-seed configuration so every run explores the same cases.
fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x5eed_5eed), failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn quadrature_matches_closed_form(seed in any::<u64>()) {
        let mut s = Sampler::new(seed, N);
        let (p, q): (SuperPoint, SuperPoint) = s.edge(true);
        let seg = GeodesicSegment::through(&p, &q).unwrap();
        let r = quad_edge(&seg, 1e-10).unwrap();
        prop_assert!(r.value.approx_eq(&edge_integral_closed(&seg).unwrap().0, 1e-8));
        prop_assert!(r.value.is_even());
    }

    #[test]
    fn ideal_triples_are_normalized(seed in any::<u64>()) {
        let mut s = Sampler::new(seed, N);
        let t: IdealTriple = s.ideal_triple(true);
        prop_assert!(t.residual() < 1e-9);
    }
}
