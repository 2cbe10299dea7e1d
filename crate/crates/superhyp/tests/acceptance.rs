//! Acceptance criteria 1–9, each run at its stated tolerance and budget.
//!
//! Every criterion prints one `PASS`/`FAIL` line with its measured worst
//! residual and wall time; the test fails if any criterion fails.

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use superhyp::areaforms::{edge_integral_closed, normalize_triangle, triangle_quantities, TriangleQuantities};
use superhyp::document::TriangleDocument;
use superhyp::geodesics::{angle_cos, GeodesicSegment};
use superhyp::numcheck::{ideal_divergence, independent_correction, normalize_ideal, quad_edge};
use superhyp::sampling::Sampler;
use superhyp::{OSpElement, SuperNumber, SuperPoint};

const N: usize = 6;
const SEED_TRIANGLE: &str = include_str!("../../../data/seed_triangle.json");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn quantities(pts: &[SuperPoint; 3]) -> TriangleQuantities {
    let nt = normalize_triangle(&pts[0], &pts[1], &pts[2]).expect("normalization");
    triangle_quantities(&nt, 1e-9).expect("triangle quantities")
}

fn seed_triangle() -> [SuperPoint; 3] {
    TriangleDocument::parse(SEED_TRIANGLE).unwrap().triangle(1e-12).unwrap()
}

/// 1. Arccos-route area equals π minus the scalar angle sum on bosonic triangles.
fn classical_regression() -> Outcome {
    let mut s = Sampler::new(101, N);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let [p, q, r]: [SuperPoint; 3] = s.triangle(false);
        let angles: f64 =
            [(&p, &q, &r), (&q, &r, &p), (&r, &p, &q)].iter().map(|(a, b, c)| angle_cos(a, b, c).unwrap().body().acos()).sum();
        let area = quantities(&[p.clone(), q.clone(), r.clone()]).area;
        worst = worst.max((area.body() - (PI - angles)).abs()).max(area.soul().max_abs());
    }
    outcome(worst < 1e-9, format!("max |area − (π − Σ angles)| = {worst:.2e} (tol 1e-9)"))
}

/// 2. The two edge identities hold coefficientwise on generic decorated edges.
fn edge_identities() -> Outcome {
    let mut s = Sampler::new(102, N);
    let mut worst = [0.0f64; 2];
    for _ in 0..100 {
        let (p, q): (SuperPoint, SuperPoint) = s.edge(true);
        let (_, eq) = edge_integral_closed(&GeodesicSegment::through(&p, &q).unwrap()).unwrap();
        let r = eq.identity_residuals().unwrap();
        worst = [worst[0].max(r[0]), worst[1].max(r[1])];
    }
    let pass = worst[0] < 1e-9 && worst[1] < 1e-9;
    outcome(pass, format!("max residuals {:.2e}, {:.2e} (tol 1e-9)", worst[0], worst[1]))
}

/// 3. Closed-form edge integral agrees with quadrature on both monotonicity patterns.
fn closed_form_vs_quadrature() -> Outcome {
    let mut s = Sampler::new(103, N);
    let mut worst = 0.0f64;
    let mut patterns = [0usize; 2];
    for _ in 0..50 {
        let (p, q): (SuperPoint, SuperPoint) = s.edge(true);
        let ([p1, p2, _], [q1, q2, _]) = (p.body3(), q.body3());
        match (q1 > p1, q2 > p2) {
            (true, false) => patterns[0] += 1,
            (false, true) => patterns[1] += 1,
            _ => {}
        }
        let seg = GeodesicSegment::through(&p, &q).unwrap();
        let closed = edge_integral_closed(&seg).unwrap().0;
        let quad = quad_edge(&seg, 1e-10).unwrap();
        worst = worst.max(closed.max_abs_diff(&quad.value));
    }
    let pass = worst < 1e-8 && patterns[0] > 0 && patterns[1] > 0;
    outcome(
        pass,
        format!("max |closed − quad| = {worst:.2e} (tol 1e-8); edges with x1↑x2↓: {}, x1↓x2↑: {}", patterns[0], patterns[1]),
    )
}

/// 4. Normalization produces α = γ = ε, both orderings and a valid witness.
fn normalization() -> Outcome {
    let mut s = Sampler::new(104, N);
    let (mut fermion, mut witness, mut orderings) = (0.0f64, 0.0f64, true);
    for _ in 0..100 {
        let [p, q, r]: [SuperPoint; 3] = s.triangle(true);
        let nt = normalize_triangle(&p, &q, &r).expect("normalization");
        fermion = fermion.max(nt.fermion_residual());
        orderings &= nt.orderings_hold();
        let w = &nt.witness;
        let mut r = (w.sdet().unwrap() - 1.0).max_abs().max(w.orthosymplectic_residual());
        for c in w.constraint_residuals().unwrap() {
            r = r.max(c);
        }
        witness = witness.max(r);
    }
    let pass = fermion < 1e-10 && orderings && witness < 1e-9;
    outcome(
        pass,
        format!("fermion residual {fermion:.2e} (tol 1e-10), orderings {orderings}, witness residual {witness:.2e} (tol 1e-9)"),
    )
}

/// 5. The long form of Q equals L + R, and body(Q) vanishes.
fn long_form_of_q() -> Outcome {
    let mut s = Sampler::new(105, N);
    let (mut long, mut body) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let tq = quantities(&s.triangle(true));
        long = long.max(tq.q_long.max_abs_diff(&(&tq.l + &tq.r)));
        body = body.max(tq.q.body().abs());
    }
    let pass = long < 1e-8 && body < 1e-9;
    outcome(pass, format!("max |Q_long − (L + R)| = {long:.2e} (tol 1e-8), max |body Q| = {body:.2e} (tol 1e-9)"))
}

/// 6. Independent route (angle sum minus quadrature area) equals (P + Q)/√(1 − R²).
fn correction_vs_independent_route() -> Outcome {
    let mut s = Sampler::new(106, N);
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let [p, q, r]: [SuperPoint; 3] = s.triangle(true);
        let nt = normalize_triangle(&p, &q, &r).unwrap();
        let tq = triangle_quantities(&nt, 1e-9).unwrap();
        let route = independent_correction(&nt, 1e-10).unwrap();
        worst = worst.max(route.correction.max_abs_diff(&tq.correction));
    }
    let seed = quantities(&seed_triangle()).correction.max_abs();
    let pass = worst < 1e-6 && seed > 1e-6;
    outcome(pass, format!("max |independent − closed| = {worst:.2e} (tol 1e-6), seed correction max |c| = {seed:.3e} (> 1e-6)"))
}

/// 7. Area and correction are unchanged under group motions of a fixed triangle.
fn osp_invariance() -> Outcome {
    let pts = seed_triangle();
    let base = quantities(&pts);
    let mut s = Sampler::new(107, 4);
    let (mut area, mut corr) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let g: OSpElement = s.osp();
        let moved = quantities(&pts.clone().map(|x| g.act(&x)));
        area = area.max(moved.area.max_abs_diff(&base.area));
        corr = corr.max(moved.correction.max_abs_diff(&base.correction));
    }
    let pass = area < 1e-8 && corr < 1e-8;
    outcome(pass, format!("max area change {area:.2e}, max correction change {corr:.2e} (tol 1e-8)"))
}

/// 8. Ideal triangles: classical body reaches π; decorated coefficient grows linearly.
fn ideal_triangles() -> Outcome {
    let boundary = |t: f64| SuperPoint::bosonic(N, 1.0 - t.cos(), 1.0 + t.cos(), t.sin());
    let [e, f, g] = [0.9, 2.9, 4.9].map(boundary);
    let classical = normalize_ideal(&e, &f, &g, 1e-12).unwrap();
    let report = ideal_divergence(&classical, &[1e4], 1e-11).unwrap();
    let body = report.body_residual[0];

    let decorated = Sampler::new(108, N).ideal_triple(true);
    let report = ideal_divergence(&decorated, &[1e3, 1e4], 1e-10).unwrap();
    let ratios_ok = report.growth_ratio.len() == 2 && report.growth_ratio.iter().all(|r| (1.9..=2.1).contains(r));
    let slope = report.slope_relative_error.unwrap_or(f64::INFINITY);
    let pass = body < 1e-6 && ratios_ok && slope < 0.05;
    outcome(
        pass,
        format!(
            "|body − π| at T=1e4 = {body:.2e} (tol 1e-6), growth ratios {:?} (in [1.9, 2.1]), slope rel. error {slope:.2e} (tol 0.05)",
            report.growth_ratio.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>()
        ),
    )
}

/// 9. Ring laws, analytic lifts and group laws on 1000 random cases.
fn algebra_suite() -> Outcome {
    let mut s = Sampler::new(109, N);
    let mut worst = 0.0f64;
    let mut track = |v: f64| worst = worst.max(v);
    for _ in 0..1000 {
        let a: SuperNumber = s.dense(-2.0, 2.0, 0.5);
        let b: SuperNumber = s.dense(-2.0, 2.0, 0.5);
        let c: SuperNumber = s.dense(-2.0, 2.0, 0.5);
        track((&(&a * &b) * &c).max_abs_diff(&(&a * &(&b * &c))));
        track((&a * &(&b + &c)).max_abs_diff(&(&(&a * &b) + &(&a * &c))));
        track((&(&a + &b) + &c).max_abs_diff(&(&a + &(&b + &c))));
        let ea = a.even_part();
        track((&ea * &b).max_abs_diff(&(&b * &ea)));
        let (oa, ob) = (a.odd_part(), b.odd_part());
        track((&oa * &ob).max_abs_diff(&-(&ob * &oa)));
        track((&oa * &oa).max_abs());

        let pos: SuperNumber = s.dense(0.5, 3.0, 0.5);
        track(pos.log().unwrap().exp().max_abs_diff(&pos));
        let root = pos.sqrt().unwrap();
        track((&root * &root).max_abs_diff(&pos));
        let (sn, cs) = (a.sin(), a.cos());
        track((&(&sn * &sn) + &(&cs * &cs)).max_abs_diff(&SuperNumber::one(N)));

        let (g, h): (OSpElement, OSpElement) = (s.osp(), s.osp());
        let gh = g.mul(&h);
        track(gh.orthosymplectic_residual());
        for r in gh.constraint_residuals().unwrap() {
            track(r);
        }
        let id = OSpElement::identity(N);
        track(g.mul(&g.inverse()).max_abs_diff(&id));
        track(g.inverse().mul(&g).max_abs_diff(&id));
        track(gh.sdet().unwrap().max_abs_diff(&(g.sdet().unwrap() * h.sdet().unwrap())));

        // Berezinian multiplicativity off the group: generic invertible supermatrices
        let m1 = generic_supermatrix(&mut s);
        let m2 = generic_supermatrix(&mut s);
        track(m1.mul(&m2).sdet().unwrap().max_abs_diff(&(m1.sdet().unwrap() * m2.sdet().unwrap())));
    }
    outcome(worst < 1e-10, format!("max residual {worst:.2e} over 1000 cases (tol 1e-10)"))
}

fn generic_supermatrix(s: &mut Sampler) -> OSpElement {
    let even = |s: &mut Sampler, lo: f64, hi: f64| -> SuperNumber { s.dense(lo, hi, 0.3).even_part() };
    let odd = |s: &mut Sampler| -> SuperNumber { s.odd(0.3) };
    OSpElement::from_rows([
        [even(s, 1.5, 2.5), even(s, -0.5, 0.5), odd(s)],
        [even(s, -0.5, 0.5), even(s, 1.5, 2.5), odd(s)],
        [odd(s), odd(s), even(s, 0.8, 1.5)],
    ])
    .unwrap()
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 9] = [
        ("1 classical regression", classical_regression, Some(Duration::from_secs(5))),
        ("2 edge identities", edge_identities, None),
        ("3 closed form vs quadrature", closed_form_vs_quadrature, Some(Duration::from_secs(60))),
        ("4 normalization", normalization, None),
        ("5 L + R = Q, body(Q) = 0", long_form_of_q, None),
        ("6 correction vs independent route", correction_vs_independent_route, None),
        ("7 OSp invariance", osp_invariance, None),
        ("8 ideal triangles", ideal_triangles, None),
        ("9 algebra suite", algebra_suite, Some(Duration::from_secs(10))),
    ];
    let mut failed = Vec::new();
    let stdout = std::io::stdout();
    // start on a fresh line after the harness's "test acceptance ..." prefix
    writeln!(stdout.lock()).unwrap();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if let Some(limit) = budget {
            if elapsed > limit {
                result.pass = false;
                result.detail.push_str(&format!("; over the {:?} budget", limit));
            }
        }
        let mut out = stdout.lock();
        let status = if result.pass { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {name}: {status} [{:.2} s] {}", elapsed.as_secs_f64(), result.detail).unwrap();
        out.flush().unwrap();
        if !result.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
