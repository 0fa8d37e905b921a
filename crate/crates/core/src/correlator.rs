//! Interaction correction `G − G_f` to the Wightman function.
//!
//! The correction is a sum of frequency integrals, each carrying one of four
//! phase structures and one of the weights `χ*`, `χ` or `−4γ|χ|²`, switched
//! on by step functions of `u, v, λ` at both points. Terms of the
//! `(1 − e^{−2πω/a})⁻¹` block that share a phase cancel in triples through
//! `χ + χ* = 4γ|χ|²`; that cancellation is applied to the term list before
//! anything is integrated.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::kinematics::{classify_region, side_of_trajectory, Side, SpacetimePoint};
use crate::oscillator::{susceptibility, ModelParams};
use crate::quadrature::{
    fold_integrand, integrate_omega_oscillatory, Estimate, QuadratureSpec, ThermalWeight,
    MAX_LOG_PHASE,
};
use crate::{ComplexValue, Error, Result};

/// Phase structure of a correlator term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhaseKind {
    /// `|au/au′|^{iω/a}`
    UU,
    /// `|av/av′|^{−iω/a}`
    VV,
    /// `|a²uv′|^{iω/a}`
    UVp,
    /// `|a²u′v|^{−iω/a}`
    UpV,
}

impl PhaseKind {
    pub const ALL: [PhaseKind; 4] = [PhaseKind::UU, PhaseKind::VV, PhaseKind::UVp, PhaseKind::UpV];

    pub fn tag(&self) -> &'static str {
        match self {
            PhaseKind::UU => "uu'",
            PhaseKind::VV => "vv'",
            PhaseKind::UVp => "uv'",
            PhaseKind::UpV => "u'v",
        }
    }

    /// `ln x` of the phase factor `x^{±iω/a}`.
    fn log_argument(&self, p: SpacetimePoint, q: SpacetimePoint, a: f64) -> f64 {
        match self {
            PhaseKind::UU => (p.u / q.u).abs().ln(),
            PhaseKind::VV => (p.v / q.v).abs().ln(),
            PhaseKind::UVp => (a * p.u).abs().ln() + (a * q.v).abs().ln(),
            PhaseKind::UpV => (a * q.u).abs().ln() + (a * p.v).abs().ln(),
        }
    }

    /// `+1` for `x^{iω/a}`, `−1` for `x^{−iω/a}`.
    fn exponent_sign(&self) -> f64 {
        match self {
            PhaseKind::UU | PhaseKind::UVp => 1.0,
            PhaseKind::VV | PhaseKind::UpV => -1.0,
        }
    }

    /// Powers of `(u, u′, v, v′)` entering the phase, used by the
    /// point-split derivatives.
    pub(crate) fn dependence(&self) -> [i8; 4] {
        match self {
            PhaseKind::UU => [1, -1, 0, 0],
            PhaseKind::VV => [0, 0, 1, -1],
            PhaseKind::UVp => [1, 0, 0, 1],
            PhaseKind::UpV => [0, 1, 1, 0],
        }
    }
}

/// Frequency-dependent weight of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChiFactor {
    /// `χ*_ω`
    ChiConj,
    /// `χ_ω`
    Chi,
    /// `−4γ|χ_ω|²`
    FdrAbs2,
}

impl ChiFactor {
    pub fn tag(&self) -> &'static str {
        match self {
            ChiFactor::ChiConj => "chi*",
            ChiFactor::Chi => "chi",
            ChiFactor::FdrAbs2 => "-4g|chi|^2",
        }
    }

    fn eval(&self, omega: f64, params: &ModelParams) -> ComplexValue {
        let chi = susceptibility(omega, params);
        match self {
            ChiFactor::ChiConj => chi.conj(),
            ChiFactor::Chi => chi,
            ChiFactor::FdrAbs2 => ComplexValue::new(-4.0 * params.gamma() * chi.norm_sqr(), 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CorrelatorTerm {
    pub phase_kind: PhaseKind,
    pub chi_factor: ChiFactor,
    pub step_product: bool,
    pub thermal: ThermalWeight,
}

impl CorrelatorTerm {
    /// Stable identifier such as `planck:uv':chi`.
    pub fn id(&self) -> alloc::string::String {
        let block = match self.thermal {
            ThermalWeight::Planckian => "planck",
            ThermalWeight::CoshSinh => "sinh",
        };
        alloc::format!("{block}:{}:{}", self.phase_kind.tag(), self.chi_factor.tag())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorResult {
    pub value: ComplexValue,
    pub error_estimate: f64,
    pub terms_active: Vec<CorrelatorTerm>,
    /// Integrand evaluations spent; zero when no term survives.
    pub evaluations: usize,
}

/// Sign flags of one point.
#[derive(Debug, Clone, Copy)]
struct Flags {
    u_neg: bool,
    v_pos: bool,
    lambda_pos: bool,
}

fn flags(p: SpacetimePoint, a: f64) -> Result<Flags> {
    classify_region(p)?;
    let side = side_of_trajectory(p, a);
    if side.side == Side::OnTrajectory {
        return Err(Error::OnTrajectory {
            lambda: side.lambda,
        });
    }
    Ok(Flags {
        u_neg: p.u < 0.0,
        v_pos: p.v > 0.0,
        lambda_pos: side.lambda > 0.0,
    })
}

/// Every term of the correction with its step-function product evaluated,
/// before the fluctuation–dissipation cancellation.
pub fn all_terms(
    p: SpacetimePoint,
    q: SpacetimePoint,
    params: &ModelParams,
) -> Result<Vec<CorrelatorTerm>> {
    let a = params.a();
    let f = flags(p, a)?;
    let g = flags(q, a)?;
    // Steps at the first point.
    let (neg_u, pos_u, pos_v, neg_v) = (f.u_neg, !f.u_neg, f.v_pos, !f.v_pos);
    let (pos_l, neg_l) = (f.lambda_pos, !f.lambda_pos);
    // Steps at the second point.
    let (neg_u2, pos_u2, pos_v2, neg_v2) = (g.u_neg, !g.u_neg, g.v_pos, !g.v_pos);
    let (pos_l2, neg_l2) = (g.lambda_pos, !g.lambda_pos);

    use ChiFactor::*;
    use PhaseKind::*;
    use ThermalWeight::*;
    let term = |phase_kind, chi_factor, thermal, step_product| CorrelatorTerm {
        phase_kind,
        chi_factor,
        step_product,
        thermal,
    };
    Ok(alloc::vec![
        // (1 − e^{−2πω/a})⁻¹ block
        term(UU, ChiConj, Planckian, neg_u && neg_u2 && neg_l),
        term(UU, Chi, Planckian, neg_u && neg_u2 && neg_l2),
        term(UU, FdrAbs2, Planckian, neg_u && neg_u2 && neg_l && neg_l2),
        term(VV, ChiConj, Planckian, pos_v && pos_v2 && pos_l),
        term(VV, Chi, Planckian, pos_v && pos_v2 && pos_l2),
        term(VV, FdrAbs2, Planckian, pos_v && pos_v2 && pos_l && pos_l2),
        term(UVp, ChiConj, Planckian, neg_u && pos_v2 && neg_l),
        term(UVp, Chi, Planckian, neg_u && pos_v2 && pos_l2),
        term(UVp, FdrAbs2, Planckian, neg_u && pos_v2 && neg_l && pos_l2),
        term(UpV, ChiConj, Planckian, neg_u2 && pos_v && pos_l),
        term(UpV, Chi, Planckian, neg_u2 && pos_v && neg_l2),
        term(UpV, FdrAbs2, Planckian, neg_u2 && pos_v && pos_l && neg_l2),
        // (sinh πω/a)⁻¹ block
        term(UU, ChiConj, CoshSinh, neg_u && neg_l && pos_u2),
        term(UU, Chi, CoshSinh, neg_u2 && neg_l2 && pos_u),
        term(VV, ChiConj, CoshSinh, pos_v && pos_l && neg_v2),
        term(VV, Chi, CoshSinh, pos_v2 && pos_l2 && neg_v),
        term(UVp, ChiConj, CoshSinh, neg_u && neg_l && neg_v2),
        term(UVp, Chi, CoshSinh, pos_v2 && pos_l2 && pos_u),
        term(UpV, ChiConj, CoshSinh, pos_u2 && pos_l && pos_v),
        term(UpV, Chi, CoshSinh, neg_u2 && neg_l2 && neg_v),
    ])
}

/// Removes `{χ*, χ, −4γ|χ|²}` triples of one phase in the Planckian block.
/// The `−4γ|χ|²` entry is active only when both partners are, so its
/// presence marks a complete triple.
fn cancel_fdr_triples(terms: &mut Vec<CorrelatorTerm>) {
    let complete: Vec<PhaseKind> = terms
        .iter()
        .filter(|t| t.thermal == ThermalWeight::Planckian && t.chi_factor == ChiFactor::FdrAbs2)
        .map(|t| t.phase_kind)
        .collect();
    terms.retain(|t| !(t.thermal == ThermalWeight::Planckian && complete.contains(&t.phase_kind)));
}

/// Terms whose step products are nonzero and which survive the
/// fluctuation–dissipation cancellation.
pub fn active_terms(
    p: SpacetimePoint,
    q: SpacetimePoint,
    params: &ModelParams,
) -> Result<Vec<CorrelatorTerm>> {
    let mut terms = all_terms(p, q, params)?;
    terms.retain(|t| t.step_product);
    cancel_fdr_triples(&mut terms);
    Ok(terms)
}

/// Terms sharing a phase and thermal block, integrated as one integrand.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct TermGroup {
    pub phase_kind: PhaseKind,
    pub thermal: ThermalWeight,
    pub factors: Vec<ChiFactor>,
}

pub(crate) fn group_terms(terms: &[CorrelatorTerm]) -> Vec<TermGroup> {
    let mut groups: Vec<TermGroup> = Vec::new();
    for t in terms {
        match groups
            .iter_mut()
            .find(|g| g.phase_kind == t.phase_kind && g.thermal == t.thermal)
        {
            Some(g) => g.factors.push(t.chi_factor),
            None => groups.push(TermGroup {
                phase_kind: t.phase_kind,
                thermal: t.thermal,
                factors: alloc::vec![t.chi_factor],
            }),
        }
    }
    groups
}

fn block_prefactor(thermal: ThermalWeight, gamma: f64) -> f64 {
    match thermal {
        ThermalWeight::Planckian => -gamma / (2.0 * PI),
        ThermalWeight::CoshSinh => -gamma / (4.0 * PI),
    }
}

/// Phase rate `ℓ` (inverse frequency) such that the phase is `e^{iωℓ}`.
pub(crate) fn phase_rate(
    kind: PhaseKind,
    p: SpacetimePoint,
    q: SpacetimePoint,
    a: f64,
) -> Result<f64> {
    let log_arg = kind.log_argument(p, q, a);
    if !(log_arg.abs() <= MAX_LOG_PHASE) {
        return Err(Error::RangeLimit { log_ratio: log_arg });
    }
    Ok(kind.exponent_sign() * log_arg / a)
}

/// Integrates one group, multiplied by `ω^power` (0 for the correlator,
/// 2 for point-split derivatives). Includes the block prefactor.
pub(crate) fn integrate_group(
    group: &TermGroup,
    p: SpacetimePoint,
    q: SpacetimePoint,
    params: &ModelParams,
    spec: &QuadratureSpec,
    power: i32,
) -> Result<Estimate> {
    let a = params.a();
    let ell = phase_rate(group.phase_kind, p, q, a)?;
    let factors = group.factors.clone();
    let f = move |omega: f64| {
        let coefficient = factors
            .iter()
            .fold(ComplexValue::new(0.0, 0.0), |acc, c| acc + c.eval(omega, params));
        coefficient * ComplexValue::from_polar(omega.powi(power), omega * ell)
    };
    let folded = fold_integrand(f, group.thermal, a)?;
    let prefactor = block_prefactor(group.thermal, params.gamma());
    let scaled = |e: Estimate| Estimate {
        value: e.value * prefactor,
        error: e.error * prefactor.abs(),
        evaluations: e.evaluations,
    };
    match integrate_omega_oscillatory(|w| folded.eval(w), ell, spec) {
        Ok(e) => Ok(scaled(e)),
        Err(Error::ConvergenceFailure { estimate, error }) => Err(Error::ConvergenceFailure {
            estimate: estimate * prefactor,
            error: error * prefactor.abs(),
        }),
        Err(e) => Err(e),
    }
}

/// Per-group values of `G − G_f`, in term-table order.
pub(crate) fn group_values(
    p: SpacetimePoint,
    q: SpacetimePoint,
    params: &ModelParams,
    spec: &QuadratureSpec,
) -> Result<(Vec<CorrelatorTerm>, Vec<(TermGroup, Estimate)>)> {
    let terms = active_terms(p, q, params)?;
    let groups = group_terms(&terms);
    let mut values = Vec::with_capacity(groups.len());
    for group in groups {
        let estimate = integrate_group(&group, p, q, params, spec, 0)?;
        values.push((group, estimate));
    }
    Ok((terms, values))
}

/// `G(p, q) − G_f(p, q)`.
///
/// Pairs with both points in `P ∪ L` have no active term and return an
/// exact zero without quadrature.
pub fn delta_two_point(
    p: SpacetimePoint,
    q: SpacetimePoint,
    params: &ModelParams,
    spec: &QuadratureSpec,
) -> Result<CorrelatorResult> {
    let (terms_active, values) = group_values(p, q, params, spec)?;
    let total = values
        .iter()
        .fold(Estimate::ZERO, |acc, (_, e)| Estimate {
            value: acc.value + e.value,
            error: acc.error + e.error,
            evaluations: acc.evaluations + e.evaluations,
        });
    Ok(CorrelatorResult {
        value: total.value,
        error_estimate: total.error,
        terms_active,
        evaluations: total.evaluations,
    })
}

/// Real-valued coincidence result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceResult {
    pub value: f64,
    pub error_estimate: f64,
}

/// `⟨φ²⟩ − ⟨φ₀²⟩` at `p`: the static polarization cloud.
///
/// Nonzero only for `v > 0`; depends on `p` through `|a²uv|`, the side of
/// the trajectory and the sign of `u`.
pub fn coincidence_delta_phi_sq(
    p: SpacetimePoint,
    params: &ModelParams,
    spec: &QuadratureSpec,
) -> Result<CoincidenceResult> {
    let a = params.a();
    let f = flags(p, a)?;
    if !f.v_pos {
        return Ok(CoincidenceResult {
            value: 0.0,
            error_estimate: 0.0,
        });
    }
    let log_x = (a * a * p.u * p.v).abs().ln();
    if !(log_x.abs() <= MAX_LOG_PHASE) {
        return Err(Error::RangeLimit { log_ratio: log_x });
    }
    let ell = log_x / a;
    // Right of the trajectory the χ* weight multiplies |a²uv|^{iω/a};
    // to the left the weights swap.
    let right = !f.lambda_pos;
    let f_omega = move |omega: f64| {
        let chi = susceptibility(omega, params);
        let phase = ComplexValue::from_polar(1.0, omega * ell);
        let (forward, backward) = if right { (chi.conj(), chi) } else { (chi, chi.conj()) };
        forward * phase + backward * phase.conj()
    };
    // To the left with u > 0 the weight is e^{−πω/a}(1 − e^{−2πω/a})⁻¹
    // = (2 sinh πω/a)⁻¹.
    let (thermal, prefactor) = if f.lambda_pos && !f.u_neg {
        (ThermalWeight::CoshSinh, -params.gamma() / (4.0 * PI))
    } else {
        (ThermalWeight::Planckian, -params.gamma() / (2.0 * PI))
    };
    let folded = fold_integrand(f_omega, thermal, a)?;
    match integrate_omega_oscillatory(|w| folded.eval(w), ell, spec) {
        Ok(e) => Ok(CoincidenceResult {
            value: prefactor * e.value.re,
            error_estimate: prefactor.abs() * e.error,
        }),
        Err(Error::ConvergenceFailure { estimate, error }) => Err(Error::ConvergenceFailure {
            estimate: estimate * prefactor,
            error: error * prefactor.abs(),
        }),
        Err(e) => Err(e),
    }
}
