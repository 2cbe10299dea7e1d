//! The machine-readable report emitted by every command.

use std::collections::BTreeMap;

use serde::Serialize;
use superhyp::grassmann::SuperNumberJson;
use superhyp::{Error, SuperNumber};

/// Report layout version.
pub const SCHEMA: u32 = 1;

/// Where the input came from and its SHA-256 digest.
#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub source: String,
    pub digest: String,
    pub generators: usize,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    pub tol: f64,
    pub quad_tol: f64,
}

/// One gated claim: the measured residual against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), pass: residual <= tolerance, residual, tolerance }
    }

    /// A yes/no claim; the residual is `0` when it holds and `1` otherwise.
    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Self { name: name.into(), pass: holds, residual: if holds { 0.0 } else { 1.0 }, tolerance: 0.0 }
    }
}

/// A library error together with the module that raised it.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorInfo {
    pub module: &'static str,
    pub kind: &'static str,
    pub message: String,
}

impl ErrorInfo {
    pub fn from_error(e: &Error) -> Self {
        let (module, kind) = classify(e);
        Self { module, kind, message: e.to_string() }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self { module: "cli", kind: "InvalidInput", message: message.into() }
    }
}

fn classify(e: &Error) -> (&'static str, &'static str) {
    match e {
        Error::ContextMismatch { .. } => ("grassmann", "ContextMismatch"),
        Error::InvalidIndex(_) => ("grassmann", "InvalidIndex"),
        Error::InvalidDocument(_) => ("cli", "InvalidDocument"),
        Error::ZeroBody { .. } => ("grassmann", "ZeroBody"),
        Error::DomainViolation { .. } => ("grassmann", "DomainViolation"),
        Error::ParityViolation(_) => ("grassmann", "ParityViolation"),
        Error::ArccosDomain { .. } => ("grassmann", "ArccosDomain"),
        Error::ConstraintViolation { .. } => ("superlinalg", "ConstraintViolation"),
        Error::CoincidentPoints { .. } => ("geodesics", "CoincidentPoints"),
        Error::CollinearVertices { .. } => ("geodesics", "CollinearVertices"),
        Error::GenericityViolation(_) => ("areaforms", "GenericityViolation"),
        Error::NormalizationRequired(_) => ("areaforms", "NormalizationRequired"),
        Error::DegenerateConfiguration(_) => ("areaforms", "DegenerateConfiguration"),
        Error::NonPositivePairing(_) => ("numcheck", "NonPositivePairing"),
        Error::ToleranceNotMet { .. } => ("numcheck", "ToleranceNotMet"),
    }
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
    InputError,
    GenericityError,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::InputError => 2,
            Status::GenericityError => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::CheckFailed => "check_failed",
            Status::InputError => "input_error",
            Status::GenericityError => "genericity_error",
        }
    }

    /// Exit status for a library error.
    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::GenericityViolation(_) | Error::NormalizationRequired(_) | Error::DegenerateConfiguration(_) => {
                Status::GenericityError
            }
            // an oracle that cannot reach its tolerance is a failed check, not bad input
            Error::ToleranceNotMet { .. } => Status::CheckFailed,
            _ => Status::InputError,
        }
    }
}

/// Per-cutoff row of the ideal-triangle table.
#[derive(Debug, Clone, Serialize)]
pub struct DivergenceRow {
    pub cutoff: f64,
    pub body: f64,
    pub body_residual: f64,
    pub dominant_at_t: Option<f64>,
    pub dominant_at_2t: Option<f64>,
    pub growth_ratio: Option<f64>,
}

/// The full report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub status: String,
    pub input: Option<InputInfo>,
    pub tolerance: Tolerances,
    /// Named super-number outputs (area, defect, correction, P, Q, R, L, ...).
    pub outputs: BTreeMap<String, SuperNumberJson>,
    /// Group element moving the input into normal position, row-major.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<SuperNumberJson>>,
    /// Input vertex index of each normalized vertex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<[usize; 3]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<DivergenceRow>,
    /// Scalar facts that accompany the table (dominant coefficient, slopes, truncation).
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub timing: Timing,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Timing {
    pub seconds: f64,
}

impl Report {
    pub fn new(command: &str, tolerance: Tolerances) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            status: Status::Ok.name().to_string(),
            input: None,
            tolerance,
            outputs: BTreeMap::new(),
            witness: None,
            labels: None,
            table: Vec::new(),
            notes: BTreeMap::new(),
            checks: Vec::new(),
            error: None,
            timing: Timing { seconds: 0.0 },
        }
    }

    pub fn output(&mut self, name: &str, value: &SuperNumber) {
        self.outputs.insert(name.to_string(), value.to_json());
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Plain-text rendering.
    pub fn render_text(&self, n: usize) -> String {
        let mut s = String::new();
        s.push_str(&format!("command: {}  status: {}\n", self.command, self.status));
        if let Some(input) = &self.input {
            s.push_str(&format!("input: {}  generators: {}  digest: {}\n", input.source, input.generators, input.digest));
        }
        s.push_str(&format!("tol: {:e}  quad-tol: {:e}\n", self.tolerance.tol, self.tolerance.quad_tol));
        if let Some(e) = &self.error {
            s.push_str(&format!("error [{}::{}]: {}\n", e.module, e.kind, e.message));
        }
        for (name, value) in &self.outputs {
            let shown = SuperNumber::<f64>::from_json(value, n).map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
            s.push_str(&format!("{name:>10} = {shown}\n"));
        }
        if let Some(labels) = self.labels {
            s.push_str(&format!("    labels = {labels:?}\n"));
        }
        if !self.table.is_empty() {
            s.push_str(&format!(
                "{:>12} {:>20} {:>12} {:>16} {:>16} {:>10}\n",
                "T", "body", "|body|-pi", "dominant(T)", "dominant(2T)", "ratio"
            ));
            let opt = |v: Option<f64>, w: usize| v.map(|x| format!("{x:>w$.6e}")).unwrap_or_else(|| format!("{:>w$}", "-"));
            for row in &self.table {
                s.push_str(&format!(
                    "{:>12.1} {:>20.15} {:>12.3e} {} {} {}\n",
                    row.cutoff,
                    row.body,
                    row.body_residual,
                    opt(row.dominant_at_t, 16),
                    opt(row.dominant_at_2t, 16),
                    row.growth_ratio.map(|r| format!("{r:>10.6}")).unwrap_or_else(|| format!("{:>10}", "-")),
                ));
            }
        }
        for (name, value) in &self.notes {
            s.push_str(&format!("{name}: {value}\n"));
        }
        if !self.checks.is_empty() {
            s.push_str("checks:\n");
            for c in &self.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                s.push_str(&format!("  {mark}  {:<44} residual {:.3e}  (tol {:.1e})\n", c.name, c.residual, c.tolerance));
            }
        }
        s.push_str(&format!("time: {:.3} s\n", self.timing.seconds));
        s
    }
}
