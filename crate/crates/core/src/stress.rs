//! Renormalized stress tensor from point-split derivatives of `G − G_f`,
//! and the energy flux through a world-tube around the trajectory.

use alloc::vec::Vec;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::correlator::{active_terms, group_terms, group_values, integrate_group, PhaseKind};
use crate::kinematics::{classify_region, SpacetimePoint};
use crate::oscillator::ModelParams;
use crate::quadrature::{gauss_legendre, QuadratureSpec};
use crate::{finite, Error, Result};

/// Exclusion zones around the singular set, in units of `1/a` for the null
/// coordinates and dimensionless for `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuardBands {
    pub horizon: f64,
    pub lambda: f64,
}

impl Default for GuardBands {
    fn default() -> Self {
        Self {
            horizon: 0.05,
            lambda: 0.05,
        }
    }
}

impl GuardBands {
    pub fn check(&self, p: SpacetimePoint, a: f64) -> Result<()> {
        classify_region(p)?;
        let reject = |reason| Err(Error::TooCloseToSingularSet { u: p.u, v: p.v, reason });
        if p.v.abs() * a <= self.horizon {
            return reject("|v| inside the past-horizon guard band");
        }
        if p.u.abs() * a <= self.horizon {
            return reject("|u| inside the horizon guard band");
        }
        if p.lambda(a).abs() <= self.lambda {
            return reject("|lambda| inside the trajectory guard band");
        }
        Ok(())
    }
}

/// Finite-difference point-split evaluation used as a cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSplit {
    pub t_uu: f64,
    pub t_vv: f64,
    /// Richardson residual plus propagated quadrature error.
    pub error_estimate: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressResult {
    pub t_uu: f64,
    pub t_vv: f64,
    /// Identically zero for a conformally coupled massless field in 1+1D.
    pub t_uv: f64,
    pub error_estimate: f64,
    pub point: SpacetimePoint,
    /// Present when the finite-difference cross-check was run.
    pub cross_check: Option<PointSplit>,
}

/// Default point-split step `10⁻³/a`.
pub fn default_split(a: f64) -> f64 {
    1e-3 / a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Component {
    Uu,
    Vv,
}

impl Component {
    /// Indices into `(u, u′, v, v′)` differentiated by this component.
    fn indices(self) -> (usize, usize) {
        match self {
            Component::Uu => (0, 1),
            Component::Vv => (2, 3),
        }
    }
}

/// `−∂_i ℓ · ∂_j ℓ` for the phase of `kind`, which multiplies `ω²` after
/// differentiating `e^{iωℓ}` once in each point.
fn phase_derivative_factor(
    kind: PhaseKind,
    (i, j): (usize, usize),
    coords: [f64; 4],
    a: f64,
) -> f64 {
    let dep = kind.dependence();
    let sign = match kind {
        PhaseKind::UU | PhaseKind::UVp => 1.0,
        PhaseKind::VV | PhaseKind::UpV => -1.0,
    };
    let d = |k: usize| sign * f64::from(dep[k]) / (a * coords[k]);
    -d(i) * d(j)
}

/// Analytic point-split limit of one component.
fn analytic_component(
    p: SpacetimePoint,
    params: &ModelParams,
    spec: &QuadratureSpec,
    component: Component,
) -> Result<(f64, f64)> {
    let a = params.a();
    let idx = component.indices();
    let coords = [p.u, p.u, p.v, p.v];
    let terms = active_terms(p, p, params)?;
    let mut value = 0.0;
    let mut error = 0.0;
    for group in group_terms(&terms) {
        let factor = phase_derivative_factor(group.phase_kind, idx, coords, a);
        if factor == 0.0 {
            // The kernel depends on at most one of the two split points.
            continue;
        }
        let e = integrate_group(&group, p, p, params, spec, 2)?;
        value += factor * e.value.re;
        error += factor.abs() * e.error;
    }
    Ok((value, error))
}

fn shifted(p: SpacetimePoint, component: Component, delta: f64) -> SpacetimePoint {
    match component {
        Component::Uu => SpacetimePoint { u: p.u + delta, v: p.v },
        Component::Vv => SpacetimePoint { u: p.u, v: p.v + delta },
    }
}

/// `[G(+,+) − G(+,−) − G(−,+) + G(−,−)] / 4h²`, assembled per kernel group so
/// that kernels independent of one split coordinate cancel exactly.
fn stencil(
    p: SpacetimePoint,
    params: &ModelParams,
    spec: &QuadratureSpec,
    component: Component,
    h: f64,
) -> Result<(f64, f64)> {
    let (i, j) = component.indices();
    let mut groups: Vec<(PhaseKind, crate::ThermalWeight, f64, f64)> = Vec::new();
    for (s1, s2, sign) in [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)] {
        let first = shifted(p, component, s1 * h);
        let second = shifted(p, component, s2 * h);
        let (_, values) = group_values(first, second, params, spec)?;
        for (group, e) in values {
            let key = (group.phase_kind, group.thermal);
            match groups.iter_mut().find(|g| (g.0, g.1) == key) {
                Some(g) => {
                    g.2 += sign * e.value.re;
                    g.3 += e.error;
                }
                None => groups.push((key.0, key.1, sign * e.value.re, e.error)),
            }
        }
    }
    let scale = 1.0 / (4.0 * h * h);
    let mut value = 0.0;
    let mut error = 0.0;
    for (kind, _, combination, err) in groups {
        let dep = kind.dependence();
        value += scale * combination;
        // Kernels missing either split coordinate are evaluated at identical
        // arguments pairwise; their combination is exact.
        if dep[i] != 0 && dep[j] != 0 {
            error += scale * err;
        }
    }
    Ok((value, error))
}

/// Finite-difference point-split stress with one Richardson halving.
pub fn point_split_stress(
    p: SpacetimePoint,
    params: &ModelParams,
    spec: &QuadratureSpec,
    split: f64,
) -> Result<PointSplit> {
    let a = params.a();
    let guards = GuardBands::default();
    guards.check(p, a)?;
    check_split(split, a, &guards)?;
    let mut out = [0.0; 2];
    let mut error = 0.0;
    for (slot, component) in [Component::Uu, Component::Vv].into_iter().enumerate() {
        let (coarse, e1) = stencil(p, params, spec, component, split)?;
        let (fine, e2) = stencil(p, params, spec, component, 0.5 * split)?;
        out[slot] = (4.0 * fine - coarse) / 3.0;
        error += (fine - coarse).abs() + (4.0 * e2 + e1) / 3.0;
    }
    Ok(PointSplit {
        t_uu: out[0],
        t_vv: out[1],
        error_estimate: error,
        step: split,
    })
}

fn check_split(split: f64, a: f64, guards: &GuardBands) -> Result<()> {
    let split = finite(split, "split")?;
    // The stencil must stay on the same side of every step function.
    if !(split > 0.0) || split * a > 0.2 * guards.horizon {
        return Err(Error::InvalidParameter(alloc::format!(
            "point-split step must lie in (0, {}/a], got {split}",
            0.2 * guards.horizon
        )));
    }
    Ok(())
}

/// `T_uu`, `T_vv` and `T_uv` of `G − G_f` at `p`.
///
/// Left of the trajectory and in `P ∪ L` no surviving kernel depends on both
/// split points, so the result is an exact zero obtained without quadrature.
/// To the right the finite-difference cross-check is run and its residual
/// folded into the error estimate.
pub fn stress_at(
    p: SpacetimePoint,
    params: &ModelParams,
    spec: &QuadratureSpec,
    split: f64,
) -> Result<StressResult> {
    let a = params.a();
    let guards = GuardBands::default();
    guards.check(p, a)?;
    check_split(split, a, &guards)?;
    spec.validate()?;

    let (t_uu, e_uu) = analytic_component(p, params, spec, Component::Uu)?;
    let (t_vv, e_vv) = analytic_component(p, params, spec, Component::Vv)?;
    let mut result = StressResult {
        t_uu,
        t_vv,
        t_uv: 0.0,
        error_estimate: e_uu + e_vv,
        point: p,
        cross_check: None,
    };
    // Only right of the trajectory inside F ∪ R do kernels survive.
    let right_of_trajectory = p.v > 0.0 && p.lambda(a) < 0.0;
    if right_of_trajectory {
        let check = point_split_stress(p, params, spec, split)?;
        let disagreement = (check.t_uu - t_uu).abs() + (check.t_vv - t_vv).abs();
        result.error_estimate += check.error_estimate.max(disagreement);
        result.cross_check = Some(check);
    }
    Ok(result)
}

/// Region between the accelerated world-lines `λ = lambda_left` and
/// `λ = lambda_right`, over the proper-time window `[tau_min, tau_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorldTube {
    pub lambda_left: f64,
    pub lambda_right: f64,
    pub tau_min: f64,
    pub tau_max: f64,
}

impl WorldTube {
    pub fn new(lambda_left: f64, lambda_right: f64, tau_min: f64, tau_max: f64) -> Result<Self> {
        let tube = Self {
            lambda_left: finite(lambda_left, "lambda_left")?,
            lambda_right: finite(lambda_right, "lambda_right")?,
            tau_min: finite(tau_min, "tau_min")?,
            tau_max: finite(tau_max, "tau_max")?,
        };
        tube.validate()?;
        Ok(tube)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_right < 0.0 && 0.0 < self.lambda_left && self.lambda_left < 1.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "world-tube needs lambda_right < 0 < lambda_left < 1, got {} and {}",
                self.lambda_right,
                self.lambda_left
            )));
        }
        if !(self.tau_min <= self.tau_max) {
            return Err(Error::InvalidParameter(alloc::format!(
                "tau_min {} exceeds tau_max {}",
                self.tau_min,
                self.tau_max
            )));
        }
        Ok(())
    }

    /// Event at proper time `tau` on the boundary `λ = lambda`.
    pub fn boundary_point(lambda: f64, tau: f64, a: f64) -> SpacetimePoint {
        let rho = (1.0 - lambda).sqrt() / a;
        SpacetimePoint {
            u: -rho * (-a * tau).exp(),
            v: rho * (a * tau).exp(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxResult {
    /// Net energy outflow, positive when leaving the tube.
    pub value: f64,
    pub error_estimate: f64,
}

/// Net outward energy flux through both tube walls.
///
/// On the wall `λ = const` with `u = −ρe^{−aτ}`, `v = ρe^{aτ}` the outflow
/// density is `±ρa (T_uu e^{−aτ} − T_vv e^{aτ})`, with `+` on the right wall
/// and `−` on the left wall.
pub fn world_tube_flux(
    tube: WorldTube,
    params: &ModelParams,
    spec: &QuadratureSpec,
    n_samples: usize,
) -> Result<FluxResult> {
    let split = default_split(params.a());
    world_tube_flux_with(tube, params.a(), n_samples, |p| {
        let s = stress_at(p, params, spec, split)?;
        Ok((s.t_uu, s.t_vv, s.error_estimate))
    })
}

/// Flux with a caller-supplied stress evaluator returning
/// `(T_uu, T_vv, error)`, so that independent stress sources can be compared.
pub fn world_tube_flux_with<S>(
    tube: WorldTube,
    a: f64,
    n_samples: usize,
    stress: S,
) -> Result<FluxResult>
where
    S: Fn(SpacetimePoint) -> Result<(f64, f64, f64)>,
{
    tube.validate()?;
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be positive".into()));
    }
    if tube.tau_min == tube.tau_max {
        return Ok(FluxResult {
            value: 0.0,
            error_estimate: 0.0,
        });
    }
    let guards = GuardBands::default();
    let (nodes, weights) = gauss_legendre(n_samples);
    let mid = 0.5 * (tube.tau_min + tube.tau_max);
    let half = 0.5 * (tube.tau_max - tube.tau_min);
    let mut value = 0.0;
    let mut error = 0.0;
    for (lambda, orientation) in [(tube.lambda_right, 1.0), (tube.lambda_left, -1.0)] {
        let rho = (1.0 - lambda).sqrt() / a;
        for (x, w) in nodes.iter().zip(&weights) {
            let tau = mid + half * x;
            let p = WorldTube::boundary_point(lambda, tau, a);
            guards.check(p, a)?;
            let (t_uu, t_vv, err) = stress(p)?;
            let (down, up) = ((-a * tau).exp(), (a * tau).exp());
            let density = orientation * rho * a * (t_uu * down - t_vv * up);
            value += half * w * density;
            error += half * w * rho * a * err * down.max(up);
        }
    }
    Ok(FluxResult {
        value,
        error_estimate: error,
    })
}
