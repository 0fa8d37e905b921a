//! Detector parameters, impedance function and the retarded response kernel.

use alloc::format;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{finite, ComplexValue, Error, Result};

/// Physical parameters of the accelerated oscillator.
///
/// Only the underdamped regime `γ < Ω₀` is representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    a: f64,
    omega0: f64,
    coupling: f64,
    gamma: f64,
    omega: f64,
}

impl ModelParams {
    pub fn new(a: f64, omega0: f64, coupling: f64) -> Result<Self> {
        let a = finite(a, "a")?;
        let omega0 = finite(omega0, "omega0")?;
        let coupling = finite(coupling, "coupling")?;
        if a <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "acceleration must be positive, got {a}"
            )));
        }
        if omega0 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "bare frequency must be positive, got {omega0}"
            )));
        }
        if coupling == 0.0 {
            return Err(Error::InvalidParameter("coupling must be nonzero".into()));
        }
        let gamma = coupling * coupling / 4.0;
        if gamma >= omega0 {
            return Err(Error::InvalidParameter(format!(
                "underdamped regime required: gamma={gamma} >= omega0={omega0}"
            )));
        }
        let omega = ((omega0 - gamma) * (omega0 + gamma)).sqrt();
        Ok(Self {
            a,
            omega0,
            coupling,
            gamma,
            omega,
        })
    }

    /// Builds parameters from the damping constant instead of the coupling.
    pub fn from_gamma(a: f64, omega0: f64, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "damping must be positive, got {gamma}"
            )));
        }
        Self::new(a, omega0, (4.0 * gamma).sqrt())
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Dissipation constant `e²/4`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Damped frequency `√(Ω₀² − γ²)`.
    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// Impedance `χ_ω = iω / (Ω₀² − ω² + 2iγω)`.
pub fn susceptibility(omega: f64, params: &ModelParams) -> ComplexValue {
    let denom = ComplexValue::new(
        params.omega0 * params.omega0 - omega * omega,
        2.0 * params.gamma * omega,
    );
    ComplexValue::new(0.0, omega) / denom
}

/// `(χ + χ*) − 4γ|χ|²`, identically zero for real `ω`.
pub fn fdr_residual(omega: f64, params: &ModelParams) -> f64 {
    let chi = susceptibility(omega, params);
    2.0 * chi.re - 4.0 * params.gamma * chi.norm_sqr()
}

/// Retarded kernel `sin(Ωτ) e^{−γτ} / Ω`, zero for `τ < 0`.
pub fn response_kernel(tau: f64, params: &ModelParams) -> f64 {
    if tau < 0.0 {
        return 0.0;
    }
    (params.omega * tau).sin() * (-params.gamma * tau).exp() / params.omega
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn params(a: f64, omega0: f64, gamma: f64) -> ModelParams {
        ModelParams::from_gamma(a, omega0, gamma).unwrap()
    }

    #[test]
    fn derived_quantities() {
        let p = ModelParams::new(1.0, 2.0, 0.5).unwrap();
        assert_eq!(p.gamma(), 0.0625);
        assert!((p.omega() - (4.0f64 - 0.0625 * 0.0625).sqrt()).abs() < 1e-15);
        assert_eq!(p.coupling(), 0.5);
    }

    #[test]
    fn rejects_invalid() {
        assert!(ModelParams::new(0.0, 1.0, 0.1).is_err());
        assert!(ModelParams::new(1.0, -1.0, 0.1).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0, 0.1).is_err());
        // gamma = 1 = omega0
        let err = ModelParams::new(1.0, 1.0, 2.0).unwrap_err();
        assert!(format!("{err}").contains("underdamped regime required"));
        assert!(ModelParams::new(1.0, 1.0, 3.0).is_err());
    }

    #[test]
    fn susceptibility_values() {
        let p = params(1.0, 2.0, 0.25);
        assert_eq!(susceptibility(0.0, &p), ComplexValue::new(0.0, 0.0));
        let at_resonance = susceptibility(2.0, &p);
        assert!((at_resonance.re - 1.0 / (2.0 * 0.25)).abs() < 1e-15);
        assert!(at_resonance.im.abs() < 1e-15);
        // 40-digit evaluation of i/(3 + 0.5i)
        let chi = susceptibility(1.0, &p);
        assert!((chi.re - 0.054_054_054_054_054_054).abs() < 1e-16);
        assert!((chi.im - 0.324_324_324_324_324_32).abs() < 1e-16);
    }

    #[test]
    fn fdr_examples() {
        let p = params(1.0, 2.0, 0.3);
        assert!(fdr_residual(2.0, &p).abs() < 1e-15);
        assert_eq!(fdr_residual(0.0, &p), 0.0);
        let p = params(1.0, 1.0, 0.1);
        assert!(fdr_residual(3.7, &p).abs() < 1e-14);
    }

    #[test]
    fn fdr_over_log_grid() {
        let p = params(1.0, 2.0, 0.1);
        for i in 0..=1200 {
            let w = p.omega0() * 10f64.powf(-6.0 + 12.0 * i as f64 / 1200.0);
            let chi = susceptibility(w, &p);
            assert!(fdr_residual(w, &p).abs() <= 1e-12 * chi.norm());
        }
    }

    #[test]
    fn kernel_values() {
        let p = params(1.0, 2.0, 0.1);
        assert_eq!(response_kernel(0.0, &p), 0.0);
        assert_eq!(response_kernel(-1.0, &p), 0.0);
        assert!(response_kernel(PI / p.omega(), &p).abs() < 1e-15);
    }

    #[test]
    fn kernel_solves_homogeneous_equation() {
        let p = params(1.0, 2.0, 0.1);
        let residual = |tau: f64, h: f64| {
            let k = |t| response_kernel(t, &p);
            let d2 = (k(tau + h) - 2.0 * k(tau) + k(tau - h)) / (h * h);
            let d1 = (k(tau + h) - k(tau - h)) / (2.0 * h);
            d2 + 2.0 * p.gamma() * d1 + p.omega0() * p.omega0() * k(tau)
        };
        for &tau in &[0.3, 1.1, 2.7, 5.0] {
            let r1 = residual(tau, 1e-2).abs();
            let r2 = residual(tau, 5e-3).abs();
            assert!(r1 < 1e-3, "{r1}");
            let order = (r1 / r2).log2();
            assert!(order > 1.8, "order {order} at tau={tau}");
        }
    }

    proptest! {
        #[test]
        fn conjugate_symmetry(w in -1e3f64..1e3, omega0 in 0.1f64..10.0, frac in 0.01f64..0.99) {
            let p = params(1.0, omega0, frac * omega0);
            let plus = susceptibility(w, &p);
            let minus = susceptibility(-w, &p);
            prop_assert!((minus - plus.conj()).norm() <= 1e-14 * plus.norm().max(1e-300));
        }
    }
}
