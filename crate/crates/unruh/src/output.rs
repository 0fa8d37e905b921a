//! Table records and their CSV / JSON-lines encodings.
//!
//! CSV files start with a `# schema: <name> v<version>` comment, then a
//! header row. Reals are written with 17 significant digits in scientific
//! notation; absent values are empty fields. JSON output is one object per
//! line with absent values as `null`.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::Format;
use crate::error::{CliError, Result};

pub trait Record: Serialize {
    /// Schema name and version for the CSV comment line.
    const SCHEMA: (&'static str, u32);
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    SkippedBoundary,
    SkippedTrajectory,
    ConvergenceFailure,
}

impl Status {
    pub fn tag(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::SkippedBoundary => "skipped_boundary",
            Status::SkippedTrajectory => "skipped_trajectory",
            Status::ConvergenceFailure => "convergence_failure",
        }
    }
}

/// One stress-grid cell. Skipped and failed cells keep only their
/// coordinates and tags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridRecord {
    pub u: f64,
    pub v: f64,
    /// `F`, `P`, `R`, `L`, or `horizon` on `u = 0` / `v = 0`.
    pub region: &'static str,
    /// `left`, `right` or `on` relative to the trajectory.
    pub side: &'static str,
    pub lambda: Option<f64>,
    pub delta_phi_sq: Option<f64>,
    pub delta_phi_sq_error: Option<f64>,
    pub t_uu: Option<f64>,
    pub t_vv: Option<f64>,
    pub t_uv: Option<f64>,
    pub stress_error: Option<f64>,
    pub status: Status,
}

impl Record for GridRecord {
    const SCHEMA: (&'static str, u32) = ("stress-grid", 1);
    const HEADER: &'static [&'static str] = &[
        "u",
        "v",
        "region",
        "side",
        "lambda",
        "delta_phi_sq",
        "delta_phi_sq_error",
        "t_uu",
        "t_vv",
        "t_uv",
        "stress_error",
        "status",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            real(self.u),
            real(self.v),
            self.region.into(),
            self.side.into(),
            opt(self.lambda),
            opt(self.delta_phi_sq),
            opt(self.delta_phi_sq_error),
            opt(self.t_uu),
            opt(self.t_vv),
            opt(self.t_uv),
            opt(self.stress_error),
            self.status.tag().into(),
        ]
    }
}

/// One sample of `Δ⟨φ²⟩` along a hyperbola `a²uv = product`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarizationRecord {
    pub product: f64,
    /// Sign of `v` on this branch of the hyperbola.
    pub branch: i8,
    pub tau: f64,
    pub u: f64,
    pub v: f64,
    pub region: &'static str,
    pub side: &'static str,
    pub delta_phi_sq: f64,
    pub error: f64,
    /// `|Δ − Δ₀| / |Δ₀|` against the first sample on the same branch, or
    /// the absolute deviation when `Δ₀ = 0`.
    pub staticity: f64,
}

impl Record for PolarizationRecord {
    const SCHEMA: (&'static str, u32) = ("polarization", 1);
    const HEADER: &'static [&'static str] = &[
        "product",
        "branch",
        "tau",
        "u",
        "v",
        "region",
        "side",
        "delta_phi_sq",
        "error",
        "staticity",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            real(self.product),
            self.branch.to_string(),
            real(self.tau),
            real(self.u),
            real(self.v),
            self.region.into(),
            self.side.into(),
            real(self.delta_phi_sq),
            real(self.error),
            real(self.staticity),
        ]
    }
}

/// Encodes `records` in `format`.
pub fn encode<R: Record>(records: &[R], format: Format) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => {
            let (name, version) = R::SCHEMA;
            writeln!(buf, "# schema: {name} v{version}").expect("write to memory");
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(buf);
            let csv_err = |e: csv::Error| CliError::Invalid(format!("csv encoding: {e}"));
            w.write_record(R::HEADER).map_err(csv_err)?;
            for r in records {
                w.write_record(r.fields()).map_err(csv_err)?;
            }
            buf = w.into_inner().map_err(|e| CliError::Invalid(format!("csv encoding: {e}")))?;
        }
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut buf, r).map_err(|e| CliError::Invalid(format!("json encoding: {e}")))?;
                buf.push(b'\n');
            }
        }
    }
    Ok(buf)
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}
