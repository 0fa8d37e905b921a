//! Run configuration: a TOML file with optional sections, overridden by
//! command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use unruh_core::{GuardBands, ModelParams, QuadratureSpec};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub a: f64,
    pub omega0: f64,
    pub coupling: f64,
}

impl Default for ModelConfig {
    /// `a = 1`, `Ω₀ = 2`, `γ = 0.1`.
    fn default() -> Self {
        Self {
            a: 1.0,
            omega0: 2.0,
            coupling: 0.4f64.sqrt(),
        }
    }
}

/// Quadrature controls; unset fields take the acceleration-scaled defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub omega_max: Option<f64>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub zero_window: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub n_u: usize,
    pub n_v: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            u_min: -3.0,
            u_max: 3.0,
            v_min: -3.0,
            v_max: 3.0,
            n_u: 20,
            n_v: 20,
        }
    }
}

impl GridConfig {
    /// Parses `u_min:u_max:n_u,v_min:v_max:n_v`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || CliError::Invalid(format!("grid must be u_min:u_max:n_u,v_min:v_max:n_v, got {text:?}"));
        let (u, v) = text.split_once(',').ok_or_else(bad)?;
        let axis = |s: &str| -> Result<(f64, f64, usize)> {
            let parts: Vec<&str> = s.split(':').map(str::trim).collect();
            match parts.as_slice() {
                [lo, hi, n] => Ok((
                    lo.parse().map_err(|_| bad())?,
                    hi.parse().map_err(|_| bad())?,
                    n.parse().map_err(|_| bad())?,
                )),
                _ => Err(bad()),
            }
        };
        let (u_min, u_max, n_u) = axis(u)?;
        let (v_min, v_max, n_v) = axis(v)?;
        Ok(Self { u_min, u_max, v_min, v_max, n_u, n_v })
    }

    pub fn validate(&self) -> Result<()> {
        let bounds = [self.u_min, self.u_max, self.v_min, self.v_max];
        if bounds.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Invalid("grid bounds must be finite".into()));
        }
        if self.n_u == 0 || self.n_v == 0 {
            return Err(CliError::Invalid("grid needs n_u, n_v >= 1".into()));
        }
        if self.u_min > self.u_max || self.v_min > self.v_max {
            return Err(CliError::Invalid("grid bounds must be ordered min <= max".into()));
        }
        Ok(())
    }

    /// Node `i` of `n` evenly spaced values including both ends.
    fn node(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    }

    /// Cells in row-major order: `u` outer, `v` inner.
    pub fn cells(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.n_u * self.n_v);
        for i in 0..self.n_u {
            let u = Self::node(self.u_min, self.u_max, self.n_u, i);
            for j in 0..self.n_v {
                out.push((u, Self::node(self.v_min, self.v_max, self.n_v, j)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GuardConfig {
    pub horizon: f64,
    pub lambda: f64,
}

impl Default for GuardConfig {
    fn default() -> Self {
        let g = GuardBands::default();
        Self {
            horizon: g.horizon,
            lambda: g.lambda,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolarizationConfig {
    /// Values of `a²uv` labelling the sampled hyperbolae.
    pub products: Vec<f64>,
    pub n_samples: usize,
    pub tau_min: f64,
    pub tau_max: f64,
}

impl Default for PolarizationConfig {
    fn default() -> Self {
        Self {
            products: vec![-4.0, -0.25, 2.0],
            n_samples: 20,
            tau_min: -1.5,
            tau_max: 1.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FluxConfig {
    pub lambda_left: f64,
    pub lambda_right: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub n_samples: usize,
}

impl Default for FluxConfig {
    fn default() -> Self {
        Self {
            lambda_left: 0.5,
            lambda_right: -0.5,
            tau_min: -1.0,
            tau_max: 1.0,
            n_samples: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FdrConfig {
    /// Sweep bounds in units of the acceleration.
    pub omega_min: f64,
    pub omega_max: f64,
    pub n_omega: usize,
}

impl Default for FdrConfig {
    fn default() -> Self {
        Self {
            omega_min: 1e-4,
            omega_max: 1e4,
            n_omega: 100_000,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub quadrature: QuadratureConfig,
    pub grid: GridConfig,
    pub guards: GuardConfig,
    pub polarization: PolarizationConfig,
    pub flux: FluxConfig,
    pub fdr: FdrConfig,
    pub output: OutputConfig,
}

/// Flag values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub a: Option<f64>,
    pub omega0: Option<f64>,
    pub coupling: Option<f64>,
    pub grid: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Invalid(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text)
    }

    /// Reads `path` if given, applies the overrides and validates.
    pub fn resolve(path: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let mut config = match path {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        config.apply(overrides)?;
        config.validate()?;
        Ok(config)
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(a) = o.a {
            self.model.a = a;
        }
        if let Some(w) = o.omega0 {
            self.model.omega0 = w;
        }
        if let Some(e) = o.coupling {
            self.model.coupling = e;
        }
        if let Some(g) = &o.grid {
            self.grid = GridConfig::parse(g)?;
        }
        if let Some(out) = &o.out {
            self.output.path = Some(out.clone());
        }
        if let Some(f) = o.format {
            self.output.format = f;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.params()?;
        self.spec()?;
        self.grid.validate()?;
        let g = &self.guards;
        let core = GuardBands::default();
        if !(g.horizon >= core.horizon) || !(g.lambda >= core.lambda) || !g.horizon.is_finite() || !g.lambda.is_finite() {
            return Err(CliError::Invalid(format!(
                "guard bands must be finite and at least horizon={}, lambda={}",
                core.horizon, core.lambda
            )));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<ModelParams> {
        let m = &self.model;
        Ok(ModelParams::new(m.a, m.omega0, m.coupling)?)
    }

    pub fn spec(&self) -> Result<QuadratureSpec> {
        let q = &self.quadrature;
        let mut spec = QuadratureSpec::for_acceleration(self.model.a);
        if let Some(x) = q.omega_max {
            spec.omega_max = x;
        }
        if let Some(x) = q.rel_tol {
            spec.rel_tol = x;
        }
        if let Some(x) = q.abs_tol {
            spec.abs_tol = x;
        }
        if let Some(x) = q.max_subdivisions {
            spec.max_subdivisions = x;
        }
        if let Some(x) = q.zero_window {
            spec.zero_window = x;
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn guard_bands(&self) -> GuardBands {
        GuardBands {
            horizon: self.guards.horizon,
            lambda: self.guards.lambda,
        }
    }
}
