//! Command implementations. Each returns structured data; the binary turns
//! it into output files, reports and exit codes.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use unruh_core::stress::default_split;
use unruh_core::{
    classify_region, coincidence_delta_phi_sq, delta_two_point, fdr_residual, oracle_two_point, side_of_trajectory,
    stress_at, susceptibility, world_tube_flux, Error, ModeSet, SpacetimePoint, WorldTube,
};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{GridRecord, PolarizationRecord, Status};

/// FDR residuals must stay below this, relative to `max(1, |χ|)`.
pub const FDR_TOL: f64 = 1e-12;
/// Stress components must stay below this, in units of `a²`.
pub const STRESS_TOL: f64 = 1e-6;
/// Relative variation allowed along a hyperbola `a²uv = const`.
pub const STATICITY_TOL: f64 = 1e-6;
/// Largest relative oracle deviation accepted.
pub const ORACLE_TOL: f64 = 0.05;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FdrReport {
    pub n_omega: usize,
    pub max_residual: f64,
    pub worst_omega: f64,
}

impl FdrReport {
    pub fn passed(&self) -> bool {
        self.max_residual < FDR_TOL
    }
}

/// Sweeps `n_omega` log-spaced frequencies and reports the largest
/// normalized residual `|(χ+χ*) − 4γ|χ|²| / max(1, |χ|)`.
pub fn fdr_check(config: &RunConfig) -> Result<FdrReport> {
    let params = config.params()?;
    let f = &config.fdr;
    if !(f.omega_min > 0.0 && f.omega_max > f.omega_min && f.omega_max.is_finite()) || f.n_omega < 2 {
        return Err(CliError::Invalid("fdr sweep needs 0 < omega_min < omega_max and n_omega >= 2".into()));
    }
    let a = params.a();
    let (lo, hi) = (f.omega_min.ln(), f.omega_max.ln());
    let step = (hi - lo) / (f.n_omega - 1) as f64;
    let mut report = FdrReport {
        n_omega: f.n_omega,
        max_residual: 0.0,
        worst_omega: a * f.omega_min,
    };
    for i in 0..f.n_omega {
        let omega = a * (lo + step * i as f64).exp();
        let r = fdr_residual(omega, &params).abs() / susceptibility(omega, &params).norm().max(1.0);
        if r > report.max_residual {
            report.max_residual = r;
            report.worst_omega = omega;
        }
    }
    Ok(report)
}

fn cell(u: f64, v: f64, config: &RunConfig) -> Result<GridRecord> {
    let params = config.params()?;
    let spec = config.spec()?;
    let a = params.a();
    let p = SpacetimePoint::new(u, v)?;
    let side = side_of_trajectory(p, a);
    let mut record = GridRecord {
        u,
        v,
        region: classify_region(p).map(|r| r.tag()).unwrap_or("horizon"),
        side: side.side.tag(),
        lambda: None,
        delta_phi_sq: None,
        delta_phi_sq_error: None,
        t_uu: None,
        t_vv: None,
        t_uv: None,
        stress_error: None,
        status: Status::Ok,
    };
    let g = config.guard_bands();
    if u.abs() * a <= g.horizon || v.abs() * a <= g.horizon {
        record.status = Status::SkippedBoundary;
        return Ok(record);
    }
    if side.lambda.abs() <= g.lambda {
        record.status = Status::SkippedTrajectory;
        return Ok(record);
    }
    let evaluated = coincidence_delta_phi_sq(p, &params, &spec)
        .and_then(|c| stress_at(p, &params, &spec, default_split(a)).map(|s| (c, s)));
    match evaluated {
        Ok((c, s)) => {
            record.lambda = Some(side.lambda);
            record.delta_phi_sq = Some(c.value);
            record.delta_phi_sq_error = Some(c.error_estimate);
            record.t_uu = Some(s.t_uu);
            record.t_vv = Some(s.t_vv);
            record.t_uv = Some(s.t_uv);
            record.stress_error = Some(s.error_estimate);
        }
        Err(Error::ConvergenceFailure { .. }) => record.status = Status::ConvergenceFailure,
        Err(e) => return Err(e.into()),
    }
    Ok(record)
}

/// Evaluates every grid cell in parallel; records come back in row-major
/// order regardless of scheduling.
pub fn stress_grid(config: &RunConfig) -> Result<Vec<GridRecord>> {
    config.validate()?;
    config
        .grid
        .cells()
        .into_par_iter()
        .map(|(u, v)| cell(u, v, config))
        .collect()
}

/// Largest `|T_uu|`, `|T_vv|` over the ok cells, in units of `a²`.
pub fn max_stress(records: &[GridRecord], a: f64) -> f64 {
    records
        .iter()
        .filter(|r| r.status == Status::Ok)
        .flat_map(|r| [r.t_uu, r.t_vv])
        .map(|t| t.map_or(0.0, f64::abs) / (a * a))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrelatorReport {
    pub p: [f64; 2],
    pub q: [f64; 2],
    pub value_re: f64,
    pub value_im: f64,
    pub error_estimate: f64,
    pub terms_active: Vec<String>,
    pub evaluations: usize,
}

pub fn correlator(config: &RunConfig, p: SpacetimePoint, q: SpacetimePoint) -> Result<CorrelatorReport> {
    let r = delta_two_point(p, q, &config.params()?, &config.spec()?)?;
    Ok(CorrelatorReport {
        p: [p.u, p.v],
        q: [q.u, q.v],
        value_re: r.value.re,
        value_im: r.value.im,
        error_estimate: r.error_estimate,
        terms_active: r.terms_active.iter().map(|t| t.id()).collect(),
        evaluations: r.evaluations,
    })
}

/// Parses `u,v` into a point.
pub fn parse_point(text: &str) -> Result<SpacetimePoint> {
    let bad = || CliError::Invalid(format!("point must be u,v, got {text:?}"));
    let (u, v) = text.split_once(',').ok_or_else(bad)?;
    let u: f64 = u.trim().parse().map_err(|_| bad())?;
    let v: f64 = v.trim().parse().map_err(|_| bad())?;
    Ok(SpacetimePoint::new(u, v)?)
}

/// Reads point pairs, one `u v u′ v′` per line, separated by commas or
/// whitespace; `#` starts a comment.
pub fn parse_pairs(text: &str) -> Result<Vec<(SpacetimePoint, SpacetimePoint)>> {
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<f64> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| CliError::Invalid(format!("line {}: not a number", n + 1)))?;
        let [u, v, u2, v2] = nums[..] else {
            return Err(CliError::Invalid(format!("line {}: expected four numbers", n + 1)));
        };
        pairs.push((SpacetimePoint::new(u, v)?, SpacetimePoint::new(u2, v2)?));
    }
    if pairs.is_empty() {
        return Err(CliError::Invalid("no point pairs given".into()));
    }
    Ok(pairs)
}

pub fn read_pairs(path: &Path) -> Result<Vec<(SpacetimePoint, SpacetimePoint)>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_pairs(&text)
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub p: [f64; 2],
    pub q: [f64; 2],
    pub correlator: [f64; 2],
    pub oracle: [f64; 2],
    pub deviation: f64,
    pub refined_deviation: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub box_length: f64,
    pub n_modes: usize,
    pub rows: Vec<OracleRow>,
    pub max_deviation: f64,
    pub max_refined_deviation: Option<f64>,
}

impl OracleReport {
    /// Within tolerance at default resolution, and closer after refinement
    /// when a refined pass was run.
    pub fn passed(&self) -> bool {
        self.max_deviation <= ORACLE_TOL && self.max_refined_deviation.map_or(true, |r| r < self.max_deviation)
    }
}

fn relative(a: unruh_core::ComplexValue, b: unruh_core::ComplexValue) -> f64 {
    let scale = b.norm();
    if scale == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / scale
    }
}

/// Compares the correlator with the mode-sum oracle at default resolution,
/// and optionally after one refinement of the mode set.
pub fn oracle_compare(
    config: &RunConfig,
    pairs: &[(SpacetimePoint, SpacetimePoint)],
    refine: bool,
) -> Result<OracleReport> {
    let params = config.params()?;
    let spec = config.spec()?;
    let modes = ModeSet::default_for(&params)?;
    let refined = if refine { Some(modes.refined()?) } else { None };
    let rows = pairs
        .par_iter()
        .map(|&(p, q)| -> Result<OracleRow> {
            let exact = delta_two_point(p, q, &params, &spec)?.value;
            let sum = oracle_two_point(p, q, &params, &modes)?;
            let refined_deviation = match &refined {
                Some(m) => Some(relative(oracle_two_point(p, q, &params, m)?, exact)),
                None => None,
            };
            Ok(OracleRow {
                p: [p.u, p.v],
                q: [q.u, q.v],
                correlator: [exact.re, exact.im],
                oracle: [sum.re, sum.im],
                deviation: relative(sum, exact),
                refined_deviation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let max_refined_deviation = refined
        .as_ref()
        .map(|_| rows.iter().filter_map(|r| r.refined_deviation).fold(0.0, f64::max));
    Ok(OracleReport {
        box_length: modes.box_length(),
        n_modes: modes.n_modes(),
        rows,
        max_deviation,
        max_refined_deviation,
    })
}

/// Samples `Δ⟨φ²⟩` along both branches of each hyperbola `a²uv = c`,
/// parametrized by the boost `τ`: `v = ±√|c| e^{aτ}/a`.
pub fn polarization(config: &RunConfig) -> Result<Vec<PolarizationRecord>> {
    config.validate()?;
    let params = config.params()?;
    let spec = config.spec()?;
    let a = params.a();
    let pc = &config.polarization;
    if pc.n_samples < 2 || !(pc.tau_min < pc.tau_max) {
        return Err(CliError::Invalid("polarization needs n_samples >= 2 and tau_min < tau_max".into()));
    }
    let g = config.guard_bands();
    let mut jobs = Vec::new();
    for &c in &pc.products {
        if !c.is_finite() || c == 0.0 || (1.0 + c).abs() <= g.lambda {
            return Err(CliError::Invalid(format!(
                "hyperbola a²uv = {c} is on a horizon or inside the trajectory guard band"
            )));
        }
        for branch in [1i8, -1] {
            for j in 0..pc.n_samples {
                let tau = pc.tau_min + (pc.tau_max - pc.tau_min) * j as f64 / (pc.n_samples - 1) as f64;
                let v = f64::from(branch) * c.abs().sqrt() * (a * tau).exp() / a;
                let u = c / (a * a * v);
                if u.abs() * a <= g.horizon || v.abs() * a <= g.horizon {
                    return Err(CliError::Invalid(format!(
                        "sample (u={u}, v={v}) on a²uv = {c} is inside the horizon guard band"
                    )));
                }
                jobs.push((c, branch, tau, SpacetimePoint::new(u, v)?));
            }
        }
    }
    let values = jobs
        .par_iter()
        .map(|&(_, _, _, p)| coincidence_delta_phi_sq(p, &params, &spec).map_err(CliError::from))
        .collect::<Result<Vec<_>>>()?;
    let mut records = Vec::with_capacity(jobs.len());
    for (i, &(product, branch, tau, p)) in jobs.iter().enumerate() {
        // Samples come in contiguous runs of n_samples per branch.
        let reference = values[i - i % pc.n_samples].value;
        let value = values[i];
        let deviation = (value.value - reference).abs();
        records.push(PolarizationRecord {
            product,
            branch,
            tau,
            u: p.u,
            v: p.v,
            region: classify_region(p)?.tag(),
            side: side_of_trajectory(p, a).side.tag(),
            delta_phi_sq: value.value,
            error: value.error_estimate,
            staticity: if reference == 0.0 { deviation } else { deviation / reference.abs() },
        });
    }
    Ok(records)
}

/// Polarization checks: exact zero for `v < 0`, staticity within tolerance.
pub fn polarization_passed(records: &[PolarizationRecord]) -> bool {
    records
        .iter()
        .all(|r| (r.v > 0.0 || r.delta_phi_sq == 0.0) && r.staticity <= STATICITY_TOL)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FluxReport {
    pub value: f64,
    pub error_estimate: f64,
    /// `error_estimate + 1e-6·a²`.
    pub bound: f64,
}

impl FluxReport {
    pub fn passed(&self) -> bool {
        self.value.abs() <= self.bound
    }
}

pub fn flux(config: &RunConfig) -> Result<FluxReport> {
    let params = config.params()?;
    let spec = config.spec()?;
    let f = &config.flux;
    let tube = WorldTube::new(f.lambda_left, f.lambda_right, f.tau_min, f.tau_max)?;
    let r = world_tube_flux(tube, &params, &spec, f.n_samples)?;
    let a = params.a();
    Ok(FluxReport {
        value: r.value,
        error_estimate: r.error_estimate,
        bound: r.error_estimate + STRESS_TOL * a * a,
    })
}
