//! `superhyp`: run the super-triangle pipeline and its oracles on JSON inputs.

mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Area, angle defect and fermionic correction of triangles in the super
/// hyperbolic plane, with oracle checks.
#[derive(Debug, Parser)]
#[command(name = "superhyp", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Residual gate for identities and constraints.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Error tolerance of the adaptive quadrature oracle.
    #[arg(long = "quad-tol", global = true, default_value_t = 1e-8)]
    pub quad_tol: f64,

    /// Number of Grassmann generators for --random inputs (documents carry their own).
    #[arg(long, global = true, default_value_t = 6)]
    pub generators: usize,

    /// Truncation cutoffs T for `ideal`, comma separated.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = vec![1e3, 1e4])]
    pub cutoffs: Vec<f64>,

    /// Generate the input from this seed instead of reading a file.
    #[arg(long, global = true, value_name = "SEED")]
    pub random: Option<u64>,

    /// With --random: generate a purely bosonic input (no fermionic decoration).
    #[arg(long, global = true)]
    pub bosonic: bool,

    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Area of a triangle (arccos R − P/√(1 − R²)).
    Area { file: Option<PathBuf> },
    /// Angle defect of a triangle (arccos R + Q/√(1 − R²)).
    Defect { file: Option<PathBuf> },
    /// Angle defect minus area, (P + Q)/√(1 − R²).
    Correction { file: Option<PathBuf> },
    /// Run every identity and oracle check on a triangle.
    Check { file: Option<PathBuf> },
    /// Truncated areas of an ideal triangle given by three light-cone points.
    Ideal { file: Option<PathBuf> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, status, n) = run::execute(&cli);
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    } else {
        print!("{}", report.render_text(n));
    }
    ExitCode::from(status.code() as u8)
}
