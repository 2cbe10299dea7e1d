use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use superhyp::areaforms::{normalize_triangle, triangle_quantities};
use superhyp::document::TriangleDocument;
use superhyp::grassmann::SuperNumberJson;
use superhyp::{SuperNumber, SuperPoint};

const N: usize = 6;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

/// Writes a three-vertex document into the test scratch directory.
fn document(name: &str, pts: &[SuperPoint; 3]) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let doc = TriangleDocument::from_points(pts);
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    path
}

fn superhyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superhyp")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = superhyp(&all);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("invalid JSON ({e}): {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (report, out.status.code().unwrap())
}

fn number(report: &Value, key: &str) -> SuperNumber {
    let n = report["input"]["generators"].as_u64().unwrap() as usize;
    let payload: SuperNumberJson = serde_json::from_value(report["outputs"][key].clone()).unwrap();
    SuperNumber::from_json(&payload, n).unwrap()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn equilateral() -> [SuperPoint; 3] {
    [SuperPoint::bosonic(N, 1.0, 1.0, 0.0), SuperPoint::bosonic(N, 2.0, 1.0, 1.0), SuperPoint::bosonic(N, 1.0, 2.0, 1.0)]
}

fn boundary(theta: f64) -> SuperPoint {
    SuperPoint::bosonic(N, 1.0 - theta.cos(), 1.0 + theta.cos(), theta.sin())
}

#[test]
fn equilateral_document_has_no_correction() {
    let path = document("equilateral.json", &equilateral());
    let (area, code) = json(&["area", path_str(&path)]);
    assert_eq!(code, 0);
    let (defect, _) = json(&["defect", path_str(&path)]);
    let (corr, _) = json(&["correction", path_str(&path)]);
    assert!(number(&corr, "correction").is_zero());
    assert!((number(&area, "area").body() - number(&defect, "defect").body()).abs() < 1e-9);
    // π − 3 arccos(3/5)
    assert!((number(&area, "area").body() - (PI - 3.0 * 0.6f64.acos())).abs() < 1e-9);
    assert_eq!(area["schema"], 1);
    for key in ["P", "Q", "R", "L"] {
        assert!(area["outputs"][key].is_object(), "missing {key}");
    }
    assert_eq!(area["witness"].as_array().unwrap().len(), 9);
}

#[test]
fn seed_document_matches_the_golden_file() {
    let (report, code) = json(&["correction", path_str(&data("seed_triangle.json"))]);
    assert_eq!(code, 0);
    let golden: Value = serde_json::from_str(&std::fs::read_to_string(data("seed_triangle.golden.json")).unwrap()).unwrap();
    let payload: SuperNumberJson = serde_json::from_value(golden["correction"].clone()).unwrap();
    let expected = SuperNumber::from_json(&payload, 4).unwrap();
    let got = number(&report, "correction");
    assert!(got.max_abs() > 1e-6);
    assert!(got.approx_eq(&expected, 1e-9));
}

#[test]
fn report_payloads_round_trip_bit_identically() {
    let path = data("seed_triangle.json");
    let (report, _) = json(&["check", path_str(&path)]);
    let pts = TriangleDocument::parse(&std::fs::read_to_string(&path).unwrap()).unwrap().triangle(1e-9).unwrap();
    let tq = triangle_quantities(&normalize_triangle(&pts[0], &pts[1], &pts[2]).unwrap(), 1e-9).unwrap();
    for (key, value) in [("area", &tq.area), ("defect", &tq.defect), ("correction", &tq.correction), ("P", &tq.p)] {
        assert_eq!(&number(&report, key), value, "{key}");
    }
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    let (a, _) = json(&["check", "--random", "11"]);
    let (b, _) = json(&["check", "--random", "11"]);
    assert_eq!(strip(a.clone()), strip(b));
    let (c, _) = json(&["check", "--random", "12"]);
    assert_ne!(a["input"]["digest"], c["input"]["digest"]);
}

#[test]
fn malformed_vertex_exits_2() {
    let mut pts = equilateral();
    pts[1].x1 = SuperNumber::constant(N, 2.5);
    let path = document("malformed.json", &pts);
    let (report, code) = json(&["area", path_str(&path)]);
    assert_eq!(code, 2);
    assert_eq!(report["error"]["kind"], "ConstraintViolation");
    assert_eq!(report["error"]["module"], "superlinalg");

    let garbage = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("garbage.json");
    std::fs::write(&garbage, "{\"generators\": 6}").unwrap();
    assert_eq!(json(&["area", path_str(&garbage)]).1, 2);
    assert_eq!(json(&["area", "/nonexistent/triangle.json"]).1, 2);
    assert_eq!(json(&["area"]).1, 2);
    assert_eq!(json(&["area", path_str(&garbage), "--random", "1"]).1, 2);
    assert_eq!(json(&["area", "--random", "1", "--generators", "0"]).1, 2);
}

#[test]
fn coincident_vertices_exit_2() {
    let [p, q, _] = equilateral();
    let path = document("coincident.json", &[p.clone(), q, p]);
    let (report, code) = json(&["check", path_str(&path)]);
    assert_eq!(code, 2);
    assert!(report["error"]["kind"].is_string());
}

#[test]
fn bosonic_random_check_passes_every_gate() {
    let (report, code) = json(&["check", "--random", "5", "--bosonic"]);
    assert_eq!(code, 0, "{report:#}");
    assert_eq!(report["status"], "ok");
    assert!(report["checks"].as_array().unwrap().len() >= 15);
}

#[test]
fn decorated_random_check_fails_only_the_expanded_form() {
    let (report, code) = json(&["check", "--random", "5"]);
    assert_eq!(code, 1);
    let failed: Vec<&str> =
        report["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failed, ["L + R = Q (expanded form)"]);
    assert_eq!(check(&report, "independent route: correction")["pass"], true);
}

#[test]
fn tol_flag_loosens_the_gates() {
    let mut pts = equilateral();
    // push one vertex 1e-5 off the hyperboloid
    pts[0].x1 = SuperNumber::constant(N, 1.0 + 1e-5);
    let path = document("perturbed.json", &pts);
    assert_eq!(json(&["area", path_str(&path)]).1, 2);
    let (report, _) = json(&["area", path_str(&path), "--tol", "1e-3"]);
    assert!(report["error"].is_null());
    assert_eq!(check(&report, "input vertices on IH")["tolerance"], 1e-3);
    assert_eq!(report["tolerance"]["tol"], 1e-3);
}

#[test]
fn text_mode_prints_a_check_table() {
    let out = superhyp(&["check", "--random", "5", "--bosonic"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status: ok"));
    assert!(text.contains("PASS  independent route: correction"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn classical_ideal_triangle() {
    let path = document("ideal.json", &[0.9, 2.9, 4.9].map(boundary));
    let (report, code) = json(&["ideal", path_str(&path), "--quad-tol", "1e-11"]);
    assert_eq!(code, 0);
    assert_eq!(check(&report, "body -> pi column monotone")["pass"], true);
    let rows = report["table"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    // the body approaches π like 6/T under the [1/T, T] truncation
    for row in rows {
        let t = row["cutoff"].as_f64().unwrap();
        assert!((row["body_residual"].as_f64().unwrap() * t - 6.0).abs() < 0.1);
    }

    let (report, _) = json(&["ideal", path_str(&path), "--cutoffs", "10,100,1000"]);
    assert_eq!(report["table"].as_array().unwrap().len(), 3);
}

#[test]
fn decorated_ideal_triangle_grows_linearly() {
    let (report, code) = json(&["ideal", "--random", "3"]);
    assert_eq!(code, 0);
    for row in report["table"].as_array().unwrap() {
        assert!((row["growth_ratio"].as_f64().unwrap() - 2.0).abs() < 0.1);
    }
    assert!(report["notes"]["slope_relative_error"].as_f64().unwrap() < 0.05);
    assert!(report["notes"]["truncation"].is_string());
}

#[test]
fn ideal_proviso_violation_exits_3() {
    // boundary angles θ and 2π − θ make p1 q2 − p2 q1 vanish on their edge
    let path = document("proviso.json", &[1.0, 2.0 * PI - 1.0, PI].map(boundary));
    let (report, code) = json(&["ideal", path_str(&path)]);
    assert_eq!(code, 3);
    assert_eq!(report["error"]["kind"], "GenericityViolation");
    assert_eq!(json(&["ideal", path_str(&path), "--cutoffs", "0.5"]).1, 2);
    // a triangle is not a light-cone triple
    assert_eq!(json(&["ideal", path_str(&document("not_ideal.json", &equilateral()))]).1, 2);
}
