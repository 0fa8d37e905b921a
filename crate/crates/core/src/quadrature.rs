//! Frequency integrals `∫_{−∞}^{∞} dω/ω · w(ω) f(ω)` over a thermal weight.
//!
//! The integrand is folded onto `ω > 0` by pairing `ω` with `−ω`, which
//! removes the `1/ω` pole when `f(−ω) = conj f(ω)` and `f(0) = 0`. The
//! folded function is then integrated in three pieces:
//!
//! * `(0, zero_window]` from a quadratic fit to samples inside the window,
//! * `[zero_window, omega_max]` by adaptive Gauss–Kronrod panels whose
//!   initial width follows the phase wavelength `2π/ρ`,
//! * `[omega_max, ∞)` by half-period summation with Wynn's ε-extrapolation
//!   when the phase rate `ρ` is nonzero, or by the map `ω = omega_max/t`.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{ComplexValue, Error, Result};

/// Largest supported `|ln x|` in a phase `x^{iω/a}`.
pub const MAX_LOG_PHASE: f64 = 50.0;

/// Phase rates below this are integrated as non-oscillatory.
const MIN_PHASE_RATE: f64 = 1e-9;

/// Controls for the frequency integration. Frequencies are absolute
/// (inverse length), not in units of the acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub omega_max: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub zero_window: f64,
}

impl QuadratureSpec {
    /// Defaults scaled to acceleration `a`: `omega_max = 40a`,
    /// `zero_window = 1e-3·a`.
    pub fn for_acceleration(a: f64) -> Self {
        Self {
            omega_max: 40.0 * a,
            rel_tol: 1e-8,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            zero_window: 1e-3 * a,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.omega_max) {
            return Err(Error::InvalidParameter("omega_max must be positive".into()));
        }
        if !positive(self.rel_tol) || !positive(self.abs_tol) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        if !positive(self.zero_window) || self.zero_window > 0.1 * self.omega_max {
            return Err(Error::InvalidParameter(
                "zero_window must be positive and much smaller than omega_max".into(),
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter("max_subdivisions must be >= 1".into()));
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::for_acceleration(1.0)
    }
}

/// Thermal factor multiplying `1/ω` in the frequency integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThermalWeight {
    /// `(1 − e^{−2πω/a})⁻¹`
    Planckian,
    /// `(sinh πω/a)⁻¹`
    CoshSinh,
}

impl ThermalWeight {
    pub fn eval(&self, omega: f64, a: f64) -> f64 {
        let x = PI * omega / a;
        match self {
            ThermalWeight::Planckian => 1.0 / (-(-2.0 * x).exp_m1()),
            ThermalWeight::CoshSinh => 1.0 / x.sinh(),
        }
    }
}

/// Integral value with an a posteriori absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: ComplexValue,
    pub error: f64,
    pub evaluations: usize,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate {
        value: ComplexValue::new(0.0, 0.0),
        error: 0.0,
        evaluations: 0,
    };

    fn add(self, other: Estimate) -> Estimate {
        Estimate {
            value: self.value + other.value,
            error: self.error + other.error,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

/// `f(ω)·w(ω)/ω + f(−ω)·w(−ω)/(−ω)` written for `f(−ω) = conj f(ω)`.
#[derive(Debug, Clone, Copy)]
pub struct Folded<F> {
    f: F,
    weight: ThermalWeight,
    a: f64,
}

impl<F: Fn(f64) -> ComplexValue> Folded<F> {
    pub fn eval(&self, omega: f64) -> ComplexValue {
        let f = (self.f)(omega);
        let x = PI * omega / self.a;
        match self.weight {
            // w/ω splits into the even part coth(x)/2ω and the odd part 1/2ω.
            ThermalWeight::Planckian => {
                ComplexValue::new(f.re / x.tanh(), f.im) / omega
            }
            ThermalWeight::CoshSinh => ComplexValue::new(2.0 * f.re / (omega * x.sinh()), 0.0),
        }
    }
}

/// Folds `∫_{−∞}^{∞} dω/ω w(ω) f(ω)` onto `ω > 0`.
///
/// `f` must satisfy `f(−ω) = conj f(ω)`; this is probed at a few
/// frequencies and a violation is a contract error.
pub fn fold_integrand<F>(f: F, weight: ThermalWeight, a: f64) -> Result<Folded<F>>
where
    F: Fn(f64) -> ComplexValue,
{
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidParameter("acceleration must be positive".into()));
    }
    for &probe in &[0.173, 0.61, 1.37, 4.9] {
        let w = probe * a;
        let plus = f(w);
        let minus = f(-w);
        let scale = plus.norm().max(minus.norm()).max(1e-300);
        if (minus - plus.conj()).norm() > 1e-9 * scale {
            return Err(Error::Contract(alloc::format!(
                "integrand is not conjugate symmetric at omega={w}"
            )));
        }
    }
    Ok(Folded { f, weight, a })
}

/// Integrates a folded, non-oscillatory integrand over `(0, ∞)`.
pub fn integrate_omega<G>(g: G, spec: &QuadratureSpec) -> Result<Estimate>
where
    G: Fn(f64) -> ComplexValue,
{
    integrate_omega_oscillatory(g, 0.0, spec)
}

/// Integrates a folded integrand whose oscillation is dominated by
/// `e^{±iρω}`, `ρ = phase_rate`.
pub fn integrate_omega_oscillatory<G>(
    g: G,
    phase_rate: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate>
where
    G: Fn(f64) -> ComplexValue,
{
    spec.validate()?;
    let rho = phase_rate.abs();
    if !rho.is_finite() {
        return Err(Error::NonFinite("phase rate"));
    }

    let window = zero_window_series(&g, spec.zero_window);
    let wavelength = if rho > MIN_PHASE_RATE {
        2.0 * PI / rho
    } else {
        f64::INFINITY
    };

    let main = adaptive(
        &g,
        spec.zero_window,
        spec.omega_max,
        wavelength,
        spec,
        spec.max_subdivisions,
    );
    let tail = if rho > MIN_PHASE_RATE {
        oscillatory_tail(&g, spec.omega_max, rho, spec)
    } else {
        let omega_max = spec.omega_max;
        adaptive(
            &|t: f64| g(omega_max / t) * (omega_max / (t * t)),
            0.0,
            1.0,
            f64::INFINITY,
            spec,
            spec.max_subdivisions,
        )
    };

    let (main, main_ok) = main;
    let (tail, tail_ok) = tail;
    let total = window.add(main).add(tail);
    let tolerance = spec.abs_tol.max(spec.rel_tol * total.value.norm());
    if !main_ok || !tail_ok || !(total.error <= tolerance) {
        return Err(Error::ConvergenceFailure {
            estimate: total.value,
            error: total.error,
        });
    }
    Ok(total)
}

/// `∫_0^w` of the quadratic through `g` at `w, w/2, w/4`; the error is its
/// distance from the cubic that also passes through `w/8`.
fn zero_window_series<G>(g: &G, w: f64) -> Estimate
where
    G: Fn(f64) -> ComplexValue,
{
    let nodes = [w, 0.5 * w, 0.25 * w, 0.125 * w];
    let values = nodes.map(|x| g(x));
    let quadratic = lagrange_integral(&nodes[..3], &values[..3], w);
    let cubic = lagrange_integral(&nodes, &values, w);
    Estimate {
        value: quadratic,
        error: (quadratic - cubic).norm() + 4.0 * f64::EPSILON * quadratic.norm(),
        evaluations: 4,
    }
}

/// `∫_0^w` of the interpolating polynomial through `(nodes, values)`.
fn lagrange_integral(nodes: &[f64], values: &[ComplexValue], w: f64) -> ComplexValue {
    let n = nodes.len();
    let mut total = ComplexValue::new(0.0, 0.0);
    for i in 0..n {
        // Expand the i-th Lagrange basis polynomial into monomial coefficients.
        let mut coeffs = [0.0f64; 5];
        coeffs[0] = 1.0;
        let mut degree = 0;
        let mut denom = 1.0;
        for (j, &xj) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            for k in (0..=degree).rev() {
                coeffs[k + 1] += coeffs[k];
                coeffs[k] *= -xj;
            }
            degree += 1;
            denom *= nodes[i] - xj;
        }
        let mut integral = 0.0;
        let mut power = w;
        for (k, c) in coeffs.iter().enumerate().take(degree + 1) {
            integral += c * power / (k + 1) as f64;
            power *= w;
        }
        total += values[i] * (integral / denom);
    }
    total
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`, by Newton iteration on
/// `P_n` from the Tricomi initial guesses.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut derivative = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            derivative = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / derivative;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: ComplexValue,
    error: f64,
}

/// 21-point Kronrod rule with the QUADPACK error heuristic.
fn gauss_kronrod_21<G>(g: &G, lo: f64, hi: f64) -> Panel
where
    G: Fn(f64) -> ComplexValue,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = g(center);
    let mut kronrod = f_center * WGK[10];
    let mut gauss = ComplexValue::new(0.0, 0.0);
    let mut abs_sum = f_center.norm() * WGK[10];
    let mut samples = [(ComplexValue::new(0.0, 0.0), ComplexValue::new(0.0, 0.0)); 10];
    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let f1 = g(center - dx);
        let f2 = g(center + dx);
        kronrod += (f1 + f2) * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
        *sample = (f1, f2);
    }
    let mean = kronrod * 0.5;
    let mut asc = (f_center - mean).norm() * WGK[10];
    for (j, (f1, f2)) in samples.iter().enumerate() {
        asc += ((*f1 - mean).norm() + (*f2 - mean).norm()) * WGK[j];
    }
    let value = kronrod * half;
    let abs_sum = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).norm();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * abs_sum;
    if abs_sum > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    Panel {
        lo,
        hi,
        value,
        error,
    }
}

/// Globally adaptive bisection on `[lo, hi]` starting from panels no wider
/// than `initial_width`. Returns the estimate and whether the tolerance was
/// met; panel sums are reduced in ascending `lo` order.
fn adaptive<G>(
    g: &G,
    lo: f64,
    hi: f64,
    initial_width: f64,
    spec: &QuadratureSpec,
    budget: usize,
) -> (Estimate, bool)
where
    G: Fn(f64) -> ComplexValue,
{
    if !(hi > lo) {
        return (Estimate::ZERO, true);
    }
    let n_init = if initial_width.is_finite() {
        (((hi - lo) / initial_width).ceil() as usize).clamp(1, budget.max(1))
    } else {
        1
    };
    let step = (hi - lo) / n_init as f64;
    let mut panels: Vec<Panel> = (0..n_init)
        .map(|i| {
            let a = lo + step * i as f64;
            let b = if i + 1 == n_init { hi } else { a + step };
            gauss_kronrod_21(g, a, b)
        })
        .collect();
    let mut evaluations = 21 * n_init;
    let mut subdivisions = 0;

    let converged = loop {
        let (value, error) = sum_panels(&panels);
        // Half the budget, leaving room for the window and tail pieces.
        let tolerance = 0.5 * spec.abs_tol.max(spec.rel_tol * value.norm());
        if error <= tolerance {
            break true;
        }
        if subdivisions >= budget {
            break false;
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, p)| {
                if p.error > best.1 {
                    (i, p.error)
                } else {
                    best
                }
            });
        let panel = panels[worst];
        let mid = 0.5 * (panel.lo + panel.hi);
        if !(mid > panel.lo && mid < panel.hi) {
            break false;
        }
        panels[worst] = gauss_kronrod_21(g, panel.lo, mid);
        panels.push(gauss_kronrod_21(g, mid, panel.hi));
        evaluations += 42;
        subdivisions += 1;
    };

    panels.sort_by(|x, y| x.lo.partial_cmp(&y.lo).unwrap_or(core::cmp::Ordering::Equal));
    let (value, error) = sum_panels(&panels);
    (
        Estimate {
            value,
            error,
            evaluations,
        },
        converged,
    )
}

fn sum_panels(panels: &[Panel]) -> (ComplexValue, f64) {
    panels.iter().fold((ComplexValue::new(0.0, 0.0), 0.0), |(v, e), p| {
        (v + p.value, e + p.error)
    })
}

/// Tail `∫_{start}^{∞}` summed over half periods `π/ρ` and accelerated
/// with the ε-algorithm.
fn oscillatory_tail<G>(g: &G, start: f64, rho: f64, spec: &QuadratureSpec) -> (Estimate, bool)
where
    G: Fn(f64) -> ComplexValue,
{
    const MAX_INTERVALS: usize = 400;
    const MIN_INTERVALS: usize = 6;
    let half_period = PI / rho;
    let mut partial = Vec::with_capacity(64);
    let mut sum = ComplexValue::new(0.0, 0.0);
    let mut interval_error = 0.0;
    let mut evaluations = 0;
    let mut previous: Option<ComplexValue> = None;
    let mut lo = start;
    let per_interval_budget = (spec.max_subdivisions / 8).max(16);

    for k in 0..MAX_INTERVALS {
        let hi = start + half_period * (k + 1) as f64;
        let (piece, ok) = adaptive(g, lo, hi, f64::INFINITY, spec, per_interval_budget);
        if !ok {
            return (
                Estimate {
                    value: sum + piece.value,
                    error: interval_error + piece.error,
                    evaluations: evaluations + piece.evaluations,
                },
                false,
            );
        }
        sum += piece.value;
        interval_error += piece.error;
        evaluations += piece.evaluations;
        partial.push(sum);
        lo = hi;

        if k + 1 < MIN_INTERVALS {
            continue;
        }
        let extrapolated = wynn_epsilon(&partial);
        if let Some(prev) = previous {
            let change = (extrapolated - prev).norm();
            let tolerance = 0.1 * spec.abs_tol.max(spec.rel_tol * extrapolated.norm());
            if change <= tolerance {
                return (
                    Estimate {
                        value: extrapolated,
                        error: change + interval_error,
                        evaluations,
                    },
                    true,
                );
            }
        }
        previous = Some(extrapolated);
    }
    let value = previous.unwrap_or(sum);
    (
        Estimate {
            value,
            error: (value - sum).norm() + interval_error,
            evaluations,
        },
        false,
    )
}

/// Highest even-column entry of the ε-table built from the partial sums.
fn wynn_epsilon(sums: &[ComplexValue]) -> ComplexValue {
    let n = sums.len();
    let mut previous: Vec<ComplexValue> = alloc::vec![ComplexValue::new(0.0, 0.0); n + 1];
    let mut current: Vec<ComplexValue> = sums.to_vec();
    let mut best = sums[n - 1];
    let mut column = 0;
    while current.len() > 1 {
        let mut next = Vec::with_capacity(current.len() - 1);
        for i in 0..current.len() - 1 {
            let diff = current[i + 1] - current[i];
            if diff.norm() == 0.0 {
                return current[i + 1];
            }
            next.push(previous[i + 1] + diff.inv());
        }
        column += 1;
        previous = current;
        current = next;
        if column % 2 == 0 {
            let candidate = current[current.len() - 1];
            if candidate.re.is_finite() && candidate.im.is_finite() {
                best = candidate;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{susceptibility, ModelParams};

    fn real(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> ComplexValue {
        move |x| ComplexValue::new(f(x), 0.0)
    }

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        for n in [1, 2, 5, 16, 33] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for deg in 0..(2 * n) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg + 1) as f64 };
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                assert!((got - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn thermal_weights() {
        let p = ThermalWeight::Planckian.eval(1.0, 1.0);
        assert!((p - 1.0 / (1.0 - (-2.0 * PI).exp())).abs() < 1e-15);
        let s = ThermalWeight::CoshSinh.eval(1.0, 2.0);
        assert!((s - 1.0 / (PI / 2.0).sinh()).abs() < 1e-15);
        assert!(ThermalWeight::Planckian.eval(-500.0, 1.0).is_finite());
        assert_eq!(ThermalWeight::CoshSinh.eval(1e4, 1.0), 0.0);
    }

    #[test]
    fn exponential_integral() {
        let est = integrate_omega(real(|w| (-w).exp()), &QuadratureSpec::default()).unwrap();
        let err = (est.value.re - 1.0).abs();
        assert!(err < 1e-8);
        assert!(err <= est.error, "true error {err} above estimate {}", est.error);
    }

    #[test]
    fn gaussian_moment() {
        let est = integrate_omega(real(|w| w * (-w * w).exp()), &QuadratureSpec::default()).unwrap();
        let err = (est.value.re - 0.5).abs();
        assert!(err < 0.5e-8);
        assert!(err <= est.error, "true error {err} above estimate {}", est.error);
    }

    #[test]
    fn oscillatory_algebraic_tail() {
        // ∫_0^∞ cos(ρω)/(1+ω²) dω = π e^{−ρ}/2
        let rho = 3.0;
        let est = integrate_omega_oscillatory(
            real(move |w| (rho * w).cos() / (1.0 + w * w)),
            rho,
            &QuadratureSpec::default(),
        )
        .unwrap();
        let exact = 0.5 * PI * (-rho).exp();
        let err = (est.value.re - exact).abs();
        assert!(err < 1e-8 * exact.max(1e-3), "err {err}");
        assert!(err <= est.error + 1e-15);
    }

    #[test]
    fn slowly_decaying_tail() {
        // ∫_0^∞ dω/(1+ω)² = 1 needs the mapped tail beyond omega_max.
        let est = integrate_omega(real(|w| 1.0 / ((1.0 + w) * (1.0 + w))), &QuadratureSpec::default())
            .unwrap();
        assert!((est.value.re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn fold_odd_imaginary_vanishes() {
        let folded =
            fold_integrand(|w| ComplexValue::new(0.0, w), ThermalWeight::CoshSinh, 1.0).unwrap();
        for &w in &[0.01, 0.5, 3.0] {
            assert_eq!(folded.eval(w), ComplexValue::new(0.0, 0.0));
        }
    }

    #[test]
    fn fold_constant_doubles_real_part() {
        // With w(ω)/ω even the folded value is 2 Re f · w(ω)/ω.
        let c = 0.75;
        let folded = fold_integrand(|_| ComplexValue::new(c, 0.0), ThermalWeight::CoshSinh, 1.0)
            .unwrap();
        let w = 0.7;
        let expected = 2.0 * c * ThermalWeight::CoshSinh.eval(w, 1.0) / w;
        assert!((folded.eval(w).re - expected).abs() < 1e-14);
        // Planckian: the odd 1/2ω parts cancel, leaving coth/ω.
        let folded = fold_integrand(|_| ComplexValue::new(c, 0.0), ThermalWeight::Planckian, 1.0)
            .unwrap();
        let direct = c * ThermalWeight::Planckian.eval(w, 1.0) / w
            + c * ThermalWeight::Planckian.eval(-w, 1.0) / (-w);
        assert!((folded.eval(w).re - direct).abs() < 1e-13);
    }

    #[test]
    fn fold_rejects_asymmetric() {
        let err = fold_integrand(|w| ComplexValue::new(w, 0.0), ThermalWeight::Planckian, 1.0)
            .err()
            .unwrap();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn folded_susceptibility_has_finite_zero_limit() {
        // Pairing χ_ω·(1−e^{−2πω/a})⁻¹/ω with its mirror leaves a finite
        // limit; reference values of the unfolded pair at ω = 1e-3, 1e-4, 1e-5
        // (a = 1, Ω₀ = 2, γ = 0.1) from 50-digit arithmetic.
        let params = ModelParams::from_gamma(1.0, 2.0, 0.1).unwrap();
        let folded = fold_integrand(
            move |w| susceptibility(w, &params),
            ThermalWeight::Planckian,
            1.0,
        )
        .unwrap();
        let expected = [
            (1e-3, 0.003_978_888_646_755_013_6, 0.250_000_061_875_015_16),
            (1e-4, 0.003_978_873_727_991_973_2, 0.250_000_000_618_750_00),
            (1e-5, 0.003_978_873_578_804_329_3, 0.250_000_000_006_187_5),
        ];
        for (w, re, im) in expected {
            let g = folded.eval(w);
            assert!((g.re - re).abs() < 1e-12 * re, "re at {w}: {}", g.re);
            assert!((g.im - im).abs() < 1e-12 * im, "im at {w}: {}", g.im);
        }
    }
}
