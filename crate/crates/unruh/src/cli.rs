//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{self, STRESS_TOL};
use crate::config::{Format, Overrides, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{self, Status};

#[derive(Debug, Parser)]
#[command(name = "unruh", version, about = "Field correlations around a uniformly accelerated oscillator")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML configuration file; flags take precedence over its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Proper acceleration.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Bare oscillator frequency.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub omega0: Option<f64>,
    /// Field coupling `e`; the damping is `e²/4`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub coupling: Option<f64>,
    /// Grid as `u_min:u_max:n_u,v_min:v_max:n_v`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Checks the fluctuation–dissipation identity over a frequency sweep.
    FdrCheck,
    /// Evaluates G − G_f for one pair of points.
    Correlator {
        /// First point as `u,v`.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Second point as `u,v`.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Stress tensor and polarization on a (u, v) grid.
    StressGrid,
    /// Polarization cloud along hyperbolae of constant a²uv.
    Polarization,
    /// Net energy flux out of a world-tube around the trajectory.
    Flux {
        #[arg(long, allow_negative_numbers = true)]
        lambda_left: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        lambda_right: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        tau_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        tau_max: Option<f64>,
        /// Gauss–Legendre nodes per tube wall.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Compares the correlator with the mode-sum oracle on listed pairs.
    OracleCompare {
        /// File with one `u v u' v'` pair per line.
        #[arg(long)]
        points: PathBuf,
        /// Also run a refined mode set and require a smaller deviation.
        #[arg(long)]
        refine: bool,
    },
}

fn status(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

/// Runs the parsed command and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    let g = cli.global;
    let overrides = Overrides {
        a: g.a,
        omega0: g.omega0,
        coupling: g.coupling,
        grid: g.grid,
        out: g.out,
        format: g.format,
    };
    let mut config = RunConfig::resolve(g.config.as_deref(), &overrides)?;
    let out = config.output.path.clone();

    match cli.command {
        Command::FdrCheck => {
            let r = commands::fdr_check(&config)?;
            println!("frequencies: {}", r.n_omega);
            println!("max residual: {:.3e} at omega = {:.6e}", r.max_residual, r.worst_omega);
            Ok(status(r.passed()))
        }
        Command::Correlator { p, q } => {
            let r = commands::correlator(&config, commands::parse_point(&p)?, commands::parse_point(&q)?)?;
            let mut line = serde_json::to_vec(&r).map_err(|e| CliError::Invalid(e.to_string()))?;
            line.push(b'\n');
            output::emit(&line, out.as_deref())?;
            Ok(0)
        }
        Command::StressGrid => {
            let records = commands::stress_grid(&config)?;
            output::emit(&output::encode(&records, config.output.format)?, out.as_deref())?;
            let a = config.model.a;
            let max = commands::max_stress(&records, a);
            let count = |s: Status| records.iter().filter(|r| r.status == s).count();
            eprintln!(
                "cells: {} ok, {} skipped, {} failed; max |T|/a^2 = {max:.3e}",
                count(Status::Ok),
                count(Status::SkippedBoundary) + count(Status::SkippedTrajectory),
                count(Status::ConvergenceFailure)
            );
            if count(Status::ConvergenceFailure) > 0 {
                return Ok(4);
            }
            Ok(status(max <= STRESS_TOL))
        }
        Command::Polarization => {
            let records = commands::polarization(&config)?;
            output::emit(&output::encode(&records, config.output.format)?, out.as_deref())?;
            let worst = records.iter().map(|r| r.staticity).fold(0.0, f64::max);
            eprintln!("samples: {}; max staticity deviation = {worst:.3e}", records.len());
            Ok(status(commands::polarization_passed(&records)))
        }
        Command::Flux {
            lambda_left,
            lambda_right,
            tau_min,
            tau_max,
            samples,
        } => {
            let f = &mut config.flux;
            f.lambda_left = lambda_left.unwrap_or(f.lambda_left);
            f.lambda_right = lambda_right.unwrap_or(f.lambda_right);
            f.tau_min = tau_min.unwrap_or(f.tau_min);
            f.tau_max = tau_max.unwrap_or(f.tau_max);
            f.n_samples = samples.unwrap_or(f.n_samples);
            let r = commands::flux(&config)?;
            println!("flux: {:.6e} (outward positive)", r.value);
            println!("error estimate: {:.3e}", r.error_estimate);
            println!("bound: {:.3e}", r.bound);
            Ok(status(r.passed()))
        }
        Command::OracleCompare { points, refine } => {
            let pairs = commands::read_pairs(&points)?;
            let r = commands::oracle_compare(&config, &pairs, refine)?;
            println!("oracle box L = {}, N = {} per sign", r.box_length, r.n_modes);
            for row in &r.rows {
                let refined = row.refined_deviation.map(|d| format!(" refined {d:.3e}")).unwrap_or_default();
                println!(
                    "({}, {}) ({}, {}): correlator {:.6e}{:+.3e}i oracle {:.6e}{:+.3e}i deviation {:.3e}{refined}",
                    row.p[0], row.p[1], row.q[0], row.q[1], row.correlator[0], row.correlator[1],
                    row.oracle[0], row.oracle[1], row.deviation
                );
            }
            println!("max deviation: {:.3e}", r.max_deviation);
            if let Some(d) = r.max_refined_deviation {
                println!("max refined deviation: {d:.3e}");
            }
            Ok(status(r.passed()))
        }
    }
}
