//! Brute-force reference for `G − G_f`: a discrete sum over Minkowski plane
//! waves, each dressed with the detector's time-domain response.
//!
//! For a mode with free profile `f_k` the detector coordinate obeys
//! `q″ + 2γq′ + Ω₀²q = −e·df_k/dτ` along the trajectory. Its steady-state
//! solution is written as `q(τ) = −e ∫₀^∞ K′(s) f_k(τ − s) ds`, with `K` the
//! retarded kernel. Plane waves seen by the accelerated detector are
//! exponential chirps, so the memory integral is taken in the variable
//! `y = (|k|/a)e^{∓a(τ−s)}` and rotated into the complex `y` plane once the
//! chirp oscillates faster than the kernel. No frequency-domain formula is
//! used anywhere in this module.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::kinematics::{classify_region, side_of_trajectory, Side, SpacetimePoint};
use crate::oscillator::ModelParams;
use crate::quadrature::gauss_legendre;
use crate::{finite, ComplexValue, Error, Result};

type C = ComplexValue;

/// `y` beyond which the memory integral leaves the real axis.
const ROTATION_THRESHOLD: f64 = 8.0;
/// Chirp amplitudes below this are treated as fully decayed.
const NEGLIGIBLE: f64 = 1e-17;
/// Extent of the rotated contours, `e^{−46} ≈ 10⁻²⁰`.
const CONTOUR_LENGTH: f64 = 46.0;
/// Panel width in units of the inverse local phase rate.
const PANEL_PHASE: f64 = 2.0;

/// One discrete plane wave with its measure weight `|c_k|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub k: f64,
    pub weight: f64,
    /// Ultraviolet continuation modes carry only the dressed–dressed
    /// product; their free-field cross terms oscillate and are truncated.
    pub dressed_only: bool,
}

impl Mode {
    pub fn omega(&self) -> f64 {
        self.k.abs()
    }

    /// Free profile: `e^{−iku}` for `k > 0`, `e^{−i|k|v}` for `k < 0`.
    pub fn free(&self, p: SpacetimePoint) -> C {
        if self.k > 0.0 {
            C::from_polar(1.0, -self.k * p.u)
        } else {
            C::from_polar(1.0, self.k * p.v)
        }
    }
}

/// A finite set of plane waves approximating `∫dk/(4π|k|)`.
///
/// Plain box modes converge slowly at both ends. A right-mover of small `k`
/// excites the detector in the remote past and its response decays only
/// like `k^{γ/a}`; a left-mover of large `k` sweeps through resonance in
/// the past and leaves a ringing tail of size `k^{−γ/a}`. The graded set
/// keeps box modes between `k_ir` and the box cutoff, replaces the modes
/// below `k_ir` by Gauss–Legendre panels in `ln k`, and continues the
/// non-oscillating dressed–dressed product above the cutoff on a second
/// logarithmic grid. Both grids extend until the power laws fall below
/// `10⁻⁶`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    box_length: f64,
    n_modes: usize,
    graded: Option<Grading>,
    modes: Vec<Mode>,
}

/// Infrared treatment of a [`ModeSet`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grading {
    /// Box modes `n ≤ ir_modes` are replaced by the logarithmic panels.
    pub ir_modes: usize,
    /// Depth of the logarithmic grid in e-folds below `k_ir`.
    pub depth: f64,
    /// Depth of the ultraviolet continuation in e-folds above the cutoff.
    pub uv_depth: f64,
    /// Panel width in `ln k`.
    pub panel: f64,
}

impl Grading {
    /// Depth and panel width suited to `params`.
    pub fn for_params(params: &ModelParams, ir_modes: usize) -> Self {
        let a = params.a();
        let decay = params.gamma() / a;
        Self {
            ir_modes,
            depth: (6.0 * core::f64::consts::LN_10 / decay).max(20.0),
            uv_depth: (3.0 * core::f64::consts::LN_10 / decay).max(10.0),
            panel: 4.0 / (1.0 + 2.0 * params.omega() / a),
        }
    }
}

impl ModeSet {
    /// Periodic box modes `k_n = 2πn/L`, `n = ±1 … ±N`, weight `1/(2L|k_n|)`.
    /// The zero mode is excluded.
    pub fn periodic_box(box_length: f64, n_modes: usize) -> Result<Self> {
        Self::build(box_length, n_modes, None)
    }

    /// Box modes above `k_ir = 2π(ir_modes + ½)/L`, logarithmic panels below.
    pub fn graded(box_length: f64, n_modes: usize, grading: Grading) -> Result<Self> {
        Self::build(box_length, n_modes, Some(grading))
    }

    fn build(box_length: f64, n_modes: usize, graded: Option<Grading>) -> Result<Self> {
        let box_length = finite(box_length, "box_length")?;
        if !(box_length > 0.0) || n_modes == 0 {
            return Err(Error::InvalidParameter(alloc::format!(
                "mode set needs L > 0 and N ≥ 1, got L={box_length}, N={n_modes}"
            )));
        }
        let spacing = 2.0 * PI / box_length;
        let mut modes = Vec::new();
        let mut push = |k: f64, weight: f64, dressed_only: bool| {
            modes.push(Mode { k, weight, dressed_only });
            modes.push(Mode { k: -k, weight, dressed_only });
        };
        // Gauss–Legendre panels in ln k over [lo, hi]; dk/(4πk) = d(ln k)/(4π).
        let log_panels = |lo: f64, hi: f64, panel: f64, push: &mut dyn FnMut(f64, f64)| {
            let count = ((hi - lo) / panel).ceil() as usize;
            let width = (hi - lo) / count as f64;
            let (nodes, weights) = gauss_legendre(16);
            for j in 0..count {
                let mid = lo + (j as f64 + 0.5) * width;
                for (x, w) in nodes.iter().zip(&weights) {
                    push((mid + 0.5 * width * x).exp(), 0.5 * width * w / (4.0 * PI));
                }
            }
        };
        let first_box = match graded {
            None => 1,
            Some(g) => {
                if g.ir_modes == 0
                    || g.ir_modes >= n_modes
                    || !(g.depth > 0.0)
                    || !(g.uv_depth >= 0.0)
                    || !(g.panel > 0.0)
                {
                    return Err(Error::InvalidParameter(alloc::format!(
                        "invalid infrared grading {g:?} for N={n_modes}"
                    )));
                }
                let top = (spacing * (g.ir_modes as f64 + 0.5)).ln();
                log_panels(top - g.depth, top, g.panel, &mut |k, w| push(k, w, false));
                if g.uv_depth > 0.0 {
                    let cutoff = (spacing * (n_modes as f64 + 0.5)).ln();
                    log_panels(cutoff, cutoff + g.uv_depth, g.panel, &mut |k, w| push(k, w, true));
                }
                g.ir_modes + 1
            }
        };
        for n in first_box..=n_modes {
            let k = spacing * n as f64;
            push(k, 1.0 / (2.0 * box_length * k), false);
        }
        Ok(Self {
            box_length,
            n_modes,
            graded,
            modes,
        })
    }

    /// `N = 2048` per sign in a box of length `50/a`, graded below the
    /// sixteenth box mode.
    pub fn default_for(params: &ModelParams) -> Result<Self> {
        Self::graded(50.0 / params.a(), 2048, Grading::for_params(params, 16))
    }

    /// Doubles the box and quadruples the mode count: the spacing halves and
    /// the cutoff `2πN/L` doubles, while `k_ir` stays put.
    pub fn refined(&self) -> Result<Self> {
        let graded = self.graded.map(|g| Grading {
            ir_modes: 2 * g.ir_modes,
            ..g
        });
        Self::build(2.0 * self.box_length, 4 * self.n_modes, graded)
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn grading(&self) -> Option<Grading> {
        self.graded
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn k_max(&self) -> f64 {
        2.0 * PI * self.n_modes as f64 / self.box_length
    }
}

/// Driving term seen by the detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Drive {
    /// No driving: the response is identically zero.
    Null,
    /// `f(τ) = e^{−iωτ}`.
    Tone { omega: f64 },
    /// A plane wave of momentum `k` evaluated on the trajectory.
    Mode { k: f64 },
}

impl Drive {
    /// `f(τ)`.
    pub fn value(&self, tau: f64, a: f64) -> C {
        match *self {
            Drive::Null => C::new(0.0, 0.0),
            Drive::Tone { omega } => C::from_polar(1.0, -omega * tau),
            Drive::Mode { k } if k > 0.0 => C::from_polar(1.0, (k / a) * (-a * tau).exp()),
            Drive::Mode { k } => C::from_polar(1.0, (k / a) * (a * tau).exp()),
        }
    }

    /// `df/dτ`.
    pub fn rate(&self, tau: f64, a: f64) -> C {
        let f = self.value(tau, a);
        match *self {
            Drive::Null => f,
            Drive::Tone { omega } => C::new(0.0, -omega) * f,
            Drive::Mode { k } if k > 0.0 => C::new(0.0, -k * (-a * tau).exp()) * f,
            Drive::Mode { k } => C::new(0.0, k * (a * tau).exp()) * f,
        }
    }
}

/// Uniform proper-time sampling grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauGrid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl TauGrid {
    pub fn new(start: f64, step: f64, len: usize) -> Result<Self> {
        let start = finite(start, "tau start")?;
        let step = finite(step, "tau step")?;
        if !(step > 0.0) || len == 0 {
            return Err(Error::Contract(alloc::format!(
                "proper-time grid needs a positive step and at least one sample, got step={step}, len={len}"
            )));
        }
        Ok(Self { start, step, len })
    }

    pub fn tau(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }
}

/// Gauss–Legendre rule shared by all panel integrations.
struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn new() -> Self {
        let (nodes, weights) = gauss_legendre(16);
        Self { nodes, weights }
    }

    fn panel<F: Fn(f64) -> C>(&self, f: &F, lo: f64, hi: f64) -> C {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let mut sum = C::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += f(mid + half * x) * *w;
        }
        sum * half
    }

    /// Panels of width `PANEL_PHASE / rate(x)` from `lo` to `hi`.
    fn march<F, R>(&self, f: &F, lo: f64, hi: f64, rate: R) -> C
    where
        F: Fn(f64) -> C,
        R: Fn(f64) -> f64,
    {
        let mut sum = C::new(0.0, 0.0);
        let mut x = lo;
        while x < hi {
            let width = (PANEL_PHASE / rate(x)).min(hi - x);
            let next = if hi - (x + width) < 1e-3 * width { hi } else { x + width };
            sum += self.panel(f, x, next);
            x = next;
        }
        sum
    }

    /// `∫₀^∞ h(t) dt` for `h` decaying like `e^{−t}`.
    fn decaying<F: Fn(f64) -> C>(&self, h: &F) -> C {
        let mut sum = C::new(0.0, 0.0);
        let mut lo = 0.0;
        let mut width = 0.5;
        while lo < CONTOUR_LENGTH {
            let hi = (lo + width).min(CONTOUR_LENGTH);
            sum += self.panel(h, lo, hi);
            lo = hi;
            if lo >= 4.0 {
                width = (2.0 * width).min(8.0);
            }
        }
        sum
    }
}

/// `K′(σ)` for complex `σ`, `K(s) = sin(Ωs)e^{−γs}/Ω`.
fn kernel_derivative(sigma: C, gamma: f64, omega: f64) -> C {
    (-sigma * gamma).exp() * ((sigma * omega).cos() - (sigma * omega).sin() * (gamma / omega))
}

fn kernel_derivative_real(s: f64, gamma: f64, omega: f64) -> f64 {
    (-gamma * s).exp() * ((omega * s).cos() - (gamma / omega) * (omega * s).sin())
}

/// `∫₀^∞ K′(s) f(τ − s) ds` for the given drive.
fn memory_integral(drive: Drive, tau: f64, params: &ModelParams, rule: &Rule) -> C {
    let (a, gamma, omega) = (params.a(), params.gamma(), params.omega());
    match drive {
        Drive::Null => C::new(0.0, 0.0),
        Drive::Tone { omega: w } => {
            let f = |s: f64| C::from_polar(kernel_derivative_real(s, gamma, omega), -w * (tau - s));
            rule.march(&f, 0.0, 45.0 / gamma, |_| omega + w.abs() + gamma)
        }
        Drive::Mode { k } if k > 0.0 => right_mover_memory(k / a * (-a * tau).exp(), params, rule),
        Drive::Mode { k } => left_mover_memory(-k / a * (a * tau).exp(), params, rule),
    }
}

/// `∫₀^∞ K′(s) exp(i y₀ e^{as}) ds`.
fn right_mover_memory(y0: f64, params: &ModelParams, rule: &Rule) -> C {
    let (a, gamma, omega) = (params.a(), params.gamma(), params.omega());
    let y_c = y0.max(ROTATION_THRESHOLD);
    let s_c = (y_c / y0).ln() / a;
    let direct = |s: f64| {
        let y = y0 * (a * s).exp();
        C::from_polar(kernel_derivative_real(s, gamma, omega), y)
    };
    let near = rule.march(&direct, 0.0, s_c, |s| omega + gamma + a * y0 * (a * s).exp());
    // Beyond y_c: y = y_c + it, dy = i dt, e^{iy} decays as e^{−t}.
    let rotated = |t: f64| {
        let y = C::new(y_c, t);
        let sigma = (y / y0).ln() / a;
        C::new(0.0, 1.0) * kernel_derivative(sigma, gamma, omega) * (C::i() * y).exp() / (y * a)
    };
    near + rule.decaying(&rotated)
}

/// `∫₀^∞ K′(s) [exp(−i y₀ e^{−as}) − 1] ds`; the subtracted constant
/// integrates to `K(∞) − K(0) = 0`.
fn left_mover_memory(y0: f64, params: &ModelParams, rule: &Rule) -> C {
    let (a, gamma, omega) = (params.a(), params.gamma(), params.omega());
    if y0 <= NEGLIGIBLE {
        // Leading order: −i y₀ ∫K′(s)e^{−as} ds = −i y₀ a/(a² + 2γa + Ω₀²).
        let laplace = a / (a * a + 2.0 * gamma * a + params.omega0() * params.omega0());
        return C::new(0.0, -y0 * laplace);
    }
    // exp(−iy) − 1 without cancellation.
    let chirp_minus_one = |y: f64| {
        let half = (0.5 * y).sin();
        C::new(-2.0 * half * half, -y.sin())
    };
    let tail_from = |s0: f64| {
        let y_start = y0 * (-a * s0).exp();
        let s_end = s0 + (y_start / NEGLIGIBLE).ln() / a;
        let f = |s: f64| chirp_minus_one(y0 * (-a * s).exp()) * kernel_derivative_real(s, gamma, omega);
        rule.march(&f, s0, s_end, |s| omega + gamma + a * y0 * (-a * s).exp())
    };
    if y0 <= ROTATION_THRESHOLD {
        return tail_from(0.0);
    }
    let y_s = ROTATION_THRESHOLD;
    let s_s = (y0 / y_s).ln() / a;
    // ∫_{y_s}^{y₀} K′(ln(y₀/y)/a) e^{−iy} dy/(ay), closed through the lower
    // half plane along y = Y − it.
    let leg = |y_real: f64| {
        let h = move |t: f64| {
            let y = C::new(y_real, -t);
            let sigma = (C::new(y0, 0.0) / y).ln() / a;
            C::new(0.0, -1.0) * kernel_derivative(sigma, gamma, omega) * (-C::i() * y).exp() / (y * a)
        };
        rule.decaying(&h)
    };
    let oscillatory = leg(y_s) - leg(y0);
    let k_s = (omega * s_s).sin() * (-gamma * s_s).exp() / omega;
    oscillatory - k_s + tail_from(s_s)
}

/// Steady-state detector response `q(τ)` to `drive`.
pub fn mode_q(drive: Drive, tau: f64, params: &ModelParams) -> Result<C> {
    let tau = finite(tau, "tau")?;
    let rule = Rule::new();
    let coupling = params.coupling();
    Ok(-memory_integral(drive, tau, params, &rule) * coupling)
}

/// Detector response sampled on `grid`.
pub fn mode_q_response(drive: Drive, params: &ModelParams, grid: &TauGrid) -> Result<Vec<C>> {
    let grid = TauGrid::new(grid.start, grid.step, grid.len)?;
    let rule = Rule::new();
    let coupling = params.coupling();
    let out = (0..grid.len)
        .map(|i| -memory_integral(drive, grid.tau(i), params, &rule) * coupling)
        .collect();
    Ok(out)
}

/// `|q″ + 2γq′ + Ω₀²q + e·df/dτ|` at interior grid points, with centred
/// second-order differences.
pub fn ode_residual(drive: Drive, params: &ModelParams, grid: &TauGrid) -> Result<Vec<f64>> {
    if grid.len < 3 {
        return Err(Error::Contract("residual needs at least three samples".into()));
    }
    let q = mode_q_response(drive, params, grid)?;
    let h = grid.step;
    let (gamma, w0, e, a) = (params.gamma(), params.omega0(), params.coupling(), params.a());
    Ok((1..grid.len - 1)
        .map(|i| {
            let d2 = (q[i + 1] - q[i] * 2.0 + q[i - 1]) / (h * h);
            let d1 = (q[i + 1] - q[i - 1]) / (2.0 * h);
            let forcing = drive.rate(grid.tau(i), a) * e;
            (d2 + d1 * (2.0 * gamma) + q[i] * (w0 * w0) + forcing).norm()
        })
        .collect())
}

/// Which retarded branch reaches `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Branch {
    /// No causal contact with the detector (`P ∪ L`-type points).
    None,
    /// Right of the trajectory, retarded time `−ln|au|/a`.
    Right(f64),
    /// Left of the trajectory, retarded time `ln(av)/a`.
    Left(f64),
}

pub fn retarded_branch(p: SpacetimePoint, a: f64) -> Result<Branch> {
    classify_region(p)?;
    let side = side_of_trajectory(p, a);
    Ok(match side.side {
        Side::OnTrajectory => return Err(Error::OnTrajectory { lambda: side.lambda }),
        Side::RightOfTrajectory if p.u < 0.0 => Branch::Right(-(a * p.u).abs().ln() / a),
        Side::LeftOfTrajectory if p.v > 0.0 => Branch::Left((a * p.v).ln() / a),
        _ => Branch::None,
    })
}

/// Interaction part `(e/2)·q_k(τ_ret)` of a mode at `p`.
pub fn mode_phi_int(mode: Mode, p: SpacetimePoint, params: &ModelParams) -> Result<C> {
    let rule = Rule::new();
    phi_int(mode, retarded_branch(p, params.a())?, params, &rule)
}

fn phi_int(mode: Mode, branch: Branch, params: &ModelParams, rule: &Rule) -> Result<C> {
    let tau = match branch {
        Branch::None => return Ok(C::new(0.0, 0.0)),
        Branch::Right(t) | Branch::Left(t) => t,
    };
    let e = params.coupling();
    Ok(memory_integral(Drive::Mode { k: mode.k }, tau, params, rule) * (-0.5 * e * e))
}

/// Contribution of one mode to `G − G_f` at `(p, q)`:
/// `w [f(p) g*(q) + g(p) f*(q) + g(p) g*(q)]`.
pub fn oracle_mode_term(
    mode: Mode,
    p: SpacetimePoint,
    q: SpacetimePoint,
    params: &ModelParams,
) -> Result<C> {
    let a = params.a();
    let (bp, bq) = (retarded_branch(p, a)?, retarded_branch(q, a)?);
    let rule = Rule::new();
    mode_term(mode, p, q, bp, bq, params, &rule)
}

fn mode_term(
    mode: Mode,
    p: SpacetimePoint,
    q: SpacetimePoint,
    bp: Branch,
    bq: Branch,
    params: &ModelParams,
    rule: &Rule,
) -> Result<C> {
    let gp = phi_int(mode, bp, params, rule)?;
    let gq = if p == q { gp } else { phi_int(mode, bq, params, rule)? };
    if mode.dressed_only {
        return Ok(gp * gq.conj() * mode.weight);
    }
    let (fp, fq) = (mode.free(p), mode.free(q));
    Ok((fp * gq.conj() + gp * fq.conj() + gp * gq.conj()) * mode.weight)
}

/// Mode-sum estimate of `G(p, q) − G_f(p, q)`, summed in mode order.
pub fn oracle_two_point(
    p: SpacetimePoint,
    q: SpacetimePoint,
    params: &ModelParams,
    modes: &ModeSet,
) -> Result<C> {
    let a = params.a();
    let (bp, bq) = (retarded_branch(p, a)?, retarded_branch(q, a)?);
    if bp == Branch::None && bq == Branch::None {
        return Ok(C::new(0.0, 0.0));
    }
    let rule = Rule::new();
    let mut sum = C::new(0.0, 0.0);
    for &mode in modes.modes() {
        sum += mode_term(mode, p, q, bp, bq, params, &rule)?;
    }
    Ok(sum)
}

/// Fourier transform `∫dτ e^{iωτ} df/dτ` of one mode along the trajectory,
/// taken on the line `Im τ = −π/2a` where the chirp becomes a decaying
/// exponential.
fn mode_spectrum(mode: Mode, omega: f64, a: f64, rule: &Rule) -> C {
    let s = mode.omega() / a;
    // Right-movers: k e^{πω/2a} ∫ e^{iωx} e^{−ax} exp(−s e^{−ax}) dx.
    // Left-movers are the mirror image x → −x.
    let sign = if mode.k > 0.0 { 1.0 } else { -1.0 };
    let envelope = |x: f64| {
        let z = s * (-a * x).exp();
        C::from_polar((-a * x).exp() * (-z).exp(), sign * omega * x)
    };
    // Start where s e^{−ax} = 40, stop where it is 1e−8 and add the
    // remaining exponential tail in closed form.
    let x_lo = (s / 40.0).ln() / a;
    let x_hi = (s / 1e-8).ln() / a;
    let body = rule.march(&envelope, x_lo, x_hi, |_| a + omega.abs());
    let slope = C::new(-a, sign * omega);
    let slope2 = C::new(-2.0 * a, sign * omega);
    let tail = -(slope * x_hi).exp() / slope + (slope2 * x_hi).exp() * s / slope2;
    (body + tail) * (mode.omega() * (PI * omega / (2.0 * a)).exp())
}

/// Spectral density `S(ω) = ∫dΔτ e^{iωΔτ} ⟨φ̇₀(τ+Δτ) φ̇₀(τ)⟩` of the free field
/// along the trajectory, from the per-mode transforms.
///
/// Every mode carries the same power up to the log-uniform phase
/// `(|k|/a)^{±iω/a}`, which turns `∫dk/(4π|k|)` into `(a/2)δ(ω − ω′)`; the
/// mode set is therefore averaged with its weights.
pub fn oracle_noise_spectrum(
    params: &ModelParams,
    modes: &ModeSet,
    omega_grid: &[f64],
) -> Result<Vec<f64>> {
    let a = params.a();
    let rule = Rule::new();
    let mut out = Vec::with_capacity(omega_grid.len());
    for &omega in omega_grid {
        let omega = finite(omega, "omega")?;
        let (mut right, mut left, mut w_right, mut w_left) = (0.0, 0.0, 0.0, 0.0);
        for &mode in modes.modes().iter().filter(|mode| !mode.dressed_only) {
            let power = mode_spectrum(mode, omega, a, &rule).norm_sqr();
            if mode.k > 0.0 {
                right += mode.weight * power;
                w_right += mode.weight;
            } else {
                left += mode.weight * power;
                w_left += mode.weight;
            }
        }
        out.push(a / (4.0 * PI) * (right / w_right + left / w_left));
    }
    Ok(out)
}
