//! Command execution: input loading, the pipeline, and the checks of each command.

use std::path::{Path, PathBuf};
use std::time::Instant;

use sha2::{Digest, Sha256};
use superhyp::areaforms::{
    edge_integral_closed, normalize_triangle, triangle_quantities, NormalizedTriangle, TriangleQuantities,
};
use superhyp::document::TriangleDocument;
use superhyp::geodesics::GeodesicSegment;
use superhyp::grassmann::MAX_GENERATORS;
use superhyp::numcheck::{ideal_divergence, independent_correction, normalize_ideal, quad_edge, IdealTriple};
use superhyp::sampling::Sampler;
use superhyp::{Error, SuperNumber, SuperPoint};

use crate::report::{Check, DivergenceRow, ErrorInfo, InputInfo, Report, Status, Tolerances};
use crate::{Cli, Command};

/// Gate of the "body → π is monotone" column check.
const MONOTONE_SLACK: f64 = 1e-6;
/// Accepted band of the growth ratio around 2.
const GROWTH_BAND: f64 = 0.1;
/// Accepted relative error of the fitted divergence slope.
const SLOPE_TOL: f64 = 0.05;
/// The independent route accumulates three quadratures plus arccos lifts;
/// its gate is this multiple of the quadrature tolerance.
const ROUTE_FACTOR: f64 = 100.0;

type Failure = (Status, ErrorInfo);

fn lib_failure(e: Error) -> Failure {
    (Status::of_error(&e), ErrorInfo::from_error(&e))
}

fn input_failure(message: impl Into<String>) -> Failure {
    (Status::InputError, ErrorInfo::input(message))
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

enum Source {
    File(PathBuf),
    Random(u64),
}

fn source(cli: &Cli, file: &Option<PathBuf>) -> Result<Source, Failure> {
    match (file, cli.random) {
        (Some(path), None) => Ok(Source::File(path.clone())),
        (None, Some(seed)) => Ok(Source::Random(seed)),
        (Some(_), Some(_)) => Err(input_failure("give either an input file or --random, not both")),
        (None, None) => Err(input_failure("an input file or --random <seed> is required")),
    }
}

fn read_document(path: &Path) -> Result<(TriangleDocument, InputInfo), Failure> {
    let bytes = std::fs::read(path).map_err(|e| input_failure(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| input_failure("input is not UTF-8"))?;
    let doc = TriangleDocument::parse(&text).map_err(lib_failure)?;
    let info = InputInfo { source: format!("file:{}", path.display()), digest: sha256_hex(&bytes), generators: doc.generators };
    Ok((doc, info))
}

fn random_info(kind: &str, seed: u64, n: usize, bosonic: bool) -> InputInfo {
    let decoration = if bosonic { "bosonic" } else { "decorated" };
    let tag = format!("random:{kind}:{seed}:{n}:{decoration}");
    InputInfo { source: tag.clone(), digest: sha256_hex(tag.as_bytes()), generators: n }
}

fn load_triangle(cli: &Cli, file: &Option<PathBuf>) -> Result<([SuperPoint; 3], InputInfo), Failure> {
    match source(cli, file)? {
        Source::File(path) => {
            let (doc, info) = read_document(&path)?;
            Ok((doc.triangle(cli.tol).map_err(lib_failure)?, info))
        }
        Source::Random(seed) => {
            let pts = Sampler::new(seed, cli.generators).triangle(!cli.bosonic);
            Ok((pts, random_info("triangle", seed, cli.generators, cli.bosonic)))
        }
    }
}

fn load_ideal(cli: &Cli, file: &Option<PathBuf>) -> Result<(IdealTriple, InputInfo), Failure> {
    match source(cli, file)? {
        Source::File(path) => {
            let (doc, info) = read_document(&path)?;
            let [e, f, g] = doc.light_cone(cli.tol).map_err(lib_failure)?;
            Ok((normalize_ideal(&e, &f, &g, cli.tol).map_err(lib_failure)?, info))
        }
        Source::Random(seed) => {
            let triple = Sampler::new(seed, cli.generators).ideal_triple(!cli.bosonic);
            Ok((triple, random_info("ideal", seed, cli.generators, cli.bosonic)))
        }
    }
}

fn validate_flags(cli: &Cli) -> Result<(), Failure> {
    let positive = |v: f64| v.is_finite() && v > 0.0;
    if !positive(cli.tol) {
        return Err(input_failure("--tol must be a positive number"));
    }
    if !positive(cli.quad_tol) {
        return Err(input_failure("--quad-tol must be a positive number"));
    }
    if cli.generators == 0 || cli.generators > MAX_GENERATORS {
        return Err(input_failure(format!("--generators must be in 1..={MAX_GENERATORS}")));
    }
    if matches!(cli.command, Command::Ideal { .. })
        && (cli.cutoffs.is_empty() || cli.cutoffs.iter().any(|&c| c.is_nan() || c <= 1.0 || c.is_infinite()))
    {
        return Err(input_failure("--cutoffs must be a non-empty list of finite values > 1"));
    }
    Ok(())
}

/// Runs the command; returns the report, the exit status and the generator count.
pub fn execute(cli: &Cli) -> (Report, Status, usize) {
    let start = Instant::now();
    let (name, file) = match &cli.command {
        Command::Area { file } => ("area", file),
        Command::Defect { file } => ("defect", file),
        Command::Correction { file } => ("correction", file),
        Command::Check { file } => ("check", file),
        Command::Ideal { file } => ("ideal", file),
    };
    let mut report = Report::new(name, Tolerances { tol: cli.tol, quad_tol: cli.quad_tol });
    let outcome = validate_flags(cli).and_then(|()| match &cli.command {
        Command::Ideal { .. } => run_ideal(cli, file, &mut report),
        _ => run_triangle(cli, name, file, &mut report),
    });
    let status = match outcome {
        Ok(()) if report.all_checks_pass() => Status::Ok,
        Ok(()) => Status::CheckFailed,
        Err((status, info)) => {
            report.error = Some(info);
            status
        }
    };
    report.status = status.name().to_string();
    report.timing.seconds = start.elapsed().as_secs_f64();
    let n = report.input.as_ref().map_or(cli.generators, |i| i.generators);
    (report, status, n)
}

fn run_triangle(cli: &Cli, name: &str, file: &Option<PathBuf>, report: &mut Report) -> Result<(), Failure> {
    let (pts, info) = load_triangle(cli, file)?;
    report.input = Some(info);
    let nt = normalize_triangle(&pts[0], &pts[1], &pts[2]).map_err(lib_failure)?;
    let tq = triangle_quantities(&nt, cli.tol).map_err(lib_failure)?;

    match name {
        "area" => report.output("area", &tq.area),
        "defect" => report.output("defect", &tq.defect),
        "correction" => report.output("correction", &tq.correction),
        _ => {
            report.output("area", &tq.area);
            report.output("defect", &tq.defect);
            report.output("correction", &tq.correction);
        }
    }
    for (key, value) in [("P", &tq.p), ("Q", &tq.q), ("R", &tq.r), ("L", &tq.l)] {
        report.output(key, value);
    }
    report.witness = Some(nt.witness.to_json());
    report.labels = Some(nt.labels);

    pipeline_checks(cli.tol, &pts, &nt, &tq, report);
    if name == "check" {
        oracle_checks(cli, &nt, &tq, report).map_err(lib_failure)?;
    }
    Ok(())
}

/// Gates that validate the pipeline output itself.
fn pipeline_checks(tol: f64, input: &[SuperPoint; 3], nt: &NormalizedTriangle, tq: &TriangleQuantities, report: &mut Report) {
    let ih = input.iter().map(SuperPoint::ih_residual).fold(0.0, f64::max);
    report.checks.push(Check::new("input vertices on IH", ih, tol));
    report.checks.push(Check::new("normalized: alpha = gamma = epsilon", nt.fermion_residual(), tol));
    report.checks.push(Check::flag("normalized: body orderings", nt.orderings_hold()));

    let w = &nt.witness;
    let mut group = w.orthosymplectic_residual();
    match (w.sdet(), w.constraint_residuals()) {
        (Ok(sdet), Ok(cons)) => {
            group = group.max((sdet - 1.0).max_abs());
            group = cons.iter().copied().fold(group, f64::max);
        }
        _ => group = f64::INFINITY,
    }
    report.checks.push(Check::new("witness in OSp(1|2), sdet = 1", group, tol));
    let moved = nt.labels.iter().zip(nt.vertices()).map(|(&k, v)| w.act(&input[k]).max_abs_diff(v)).fold(0.0, f64::max);
    report.checks.push(Check::new("witness maps input onto normalized vertices", moved, tol));

    let r = &tq.residuals;
    report.checks.push(Check::new("edge identities A_i B_i, A B_i - B A_i", r.edge_identities, tol));
    report.checks.push(Check::new("edge products vanishing by degree", r.edge_degree, tol));
    report.checks.push(Check::new("edge cos^2 + sin^2 = 1", r.edge_trig, tol));
    report.checks.push(Check::new("i, j, k from pairings", r.ijk, tol));
    report.checks.push(Check::new("FGH product (relative)", r.fgh / tq.fgh.max_abs().max(1.0), tol));
    report.checks.push(Check::new("body(Q) = 0", r.q_body, tol));
}

/// Long-form and oracle equivalences run by `check`.
fn oracle_checks(cli: &Cli, nt: &NormalizedTriangle, tq: &TriangleQuantities, report: &mut Report) -> superhyp::Result<()> {
    let tol = cli.tol;
    report.checks.push(Check::new("L + R = Q (expanded form)", tq.residuals.long_form, tol));

    let quad_gate = tol.max(cli.quad_tol);
    let [p, q, r] = nt.vertices();
    let mut edge_sum = SuperNumber::zero(p.num_generators());
    for (label, (a, b)) in ["PQ", "QR", "RP"].iter().zip([(p, q), (q, r), (r, p)]) {
        let seg = GeodesicSegment::through(a, b)?;
        let closed = edge_integral_closed(&seg)?.0;
        let quad = quad_edge(&seg, cli.quad_tol)?;
        report.checks.push(Check::new(
            format!("edge {label}: closed form vs quadrature"),
            closed.max_abs_diff(&quad.value),
            quad_gate,
        ));
        edge_sum += closed;
    }
    let edge_sum = if edge_sum.body() < 0.0 { -edge_sum } else { edge_sum };
    // the arccos route cancels large P and R coefficients on thin triangles
    let scale = tq.area.max_abs().max(1.0);
    report.checks.push(Check::new("area: arccos route vs edge sum (relative)", tq.area.max_abs_diff(&edge_sum) / scale, tol));

    let route_gate = tol.max(ROUTE_FACTOR * cli.quad_tol);
    let route = independent_correction(nt, cli.quad_tol)?;
    report.checks.push(Check::new("independent route: defect from angles", route.defect.max_abs_diff(&tq.defect), tol));
    report.checks.push(Check::new("independent route: area by quadrature", route.area.max_abs_diff(&tq.area), route_gate));
    report.checks.push(Check::new("independent route: correction", route.correction.max_abs_diff(&tq.correction), route_gate));
    Ok(())
}

fn run_ideal(cli: &Cli, file: &Option<PathBuf>, report: &mut Report) -> Result<(), Failure> {
    let (triple, info) = load_ideal(cli, file)?;
    report.input = Some(info);
    let mut cutoffs = cli.cutoffs.clone();
    cutoffs.sort_by(f64::total_cmp);
    let div = ideal_divergence(&triple, &cutoffs, cli.quad_tol).map_err(lib_failure)?;

    let dominant_mask = div.dominant.as_ref().map(|idx| superhyp::grassmann::indices_to_mask(idx, triple.e.num_generators()));
    let dominant_mask = match dominant_mask {
        Some(m) => Some(m.map_err(lib_failure)?),
        None => None,
    };
    for (k, &cut) in div.cutoffs.iter().enumerate() {
        report.output(&format!("area[T={cut:e}]"), &div.partials[k]);
        report.table.push(DivergenceRow {
            cutoff: cut,
            body: div.body_partial[k],
            body_residual: div.body_residual[k],
            dominant_at_t: dominant_mask.map(|m| div.partials[k].coefficient_mask(m)),
            dominant_at_2t: dominant_mask.map(|m| div.doubled_partials[k].coefficient_mask(m)),
            growth_ratio: div.growth_ratio.get(k).copied(),
        });
    }
    report.output("analytic_slope", &div.analytic_slope);
    report.notes.insert("truncation".into(), div.truncation.into());
    report.notes.insert("dominant".into(), serde_json::to_value(&div.dominant).expect("indices serialize"));
    if let Some(last) = div.body_residual.last() {
        report.notes.insert("body_residual_at_largest_cutoff".into(), (*last).into());
    }
    if let Some(err) = div.slope_relative_error {
        report.notes.insert("slope_relative_error".into(), err.into());
    }

    report.checks.push(Check::new("ideal triple: pairings = 2, isotropic", triple.residual(), cli.tol));
    let rise = div.body_residual.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    report.checks.push(Check::new("body -> pi column monotone", rise, MONOTONE_SLACK));
    if dominant_mask.is_some() {
        let spread = div.growth_ratio.iter().map(|r| (r - 2.0).abs()).fold(0.0, f64::max);
        report.checks.push(Check::new("dominant coefficient growth ratio ~ 2", spread, GROWTH_BAND));
        let slope = div.slope_relative_error.unwrap_or(f64::INFINITY);
        report.checks.push(Check::new("fitted slope vs analytic (relative)", slope, SLOPE_TOL));
    }
    Ok(())
}
