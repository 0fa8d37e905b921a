//! Uniformly accelerated harmonic oscillator minimally coupled to a massless
//! scalar field in 1+1 dimensions.
//!
//! The crate evaluates the interaction correction `G - G_f` to the field
//! two-point function anywhere in Minkowski space, its coincidence limit
//! (the static polarization cloud), and the renormalized stress-energy
//! tensor obtained by point splitting. An independent mode-sum oracle
//! recomputes the same correlator from discretized box modes and the
//! time-domain detector response.
//!
//! Natural units `c = ħ = 1` are used throughout.
//!
//! The crate is `no_std` and only needs `alloc`; the `std` feature links the
//! standard library for downstream convenience.

#![no_std]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

mod error;
pub use error::*;

pub mod correlator;
pub mod kinematics;
pub mod oracle;
pub mod oscillator;
pub mod quadrature;
pub mod stress;

/// Complex carrier used for susceptibilities, integrands and correlators.
pub type ComplexValue = num_complex::Complex64;

pub use kinematics::{
    classify_region, retarded_time_left, retarded_time_right, side_of_trajectory, to_null,
    trajectory, Region, Side, SpacetimePoint, TrajectorySide,
};
pub use oscillator::{fdr_residual, response_kernel, susceptibility, ModelParams};
pub use quadrature::{integrate_omega, Estimate, QuadratureSpec, ThermalWeight};
pub use correlator::{
    active_terms, coincidence_delta_phi_sq, delta_two_point, ChiFactor, CoincidenceResult,
    CorrelatorResult, CorrelatorTerm, PhaseKind,
};
pub use stress::{
    point_split_stress, stress_at, world_tube_flux, FluxResult, GuardBands, PointSplit,
    StressResult, WorldTube,
};
pub use oracle::{
    mode_phi_int, mode_q_response, ode_residual, oracle_mode_term, oracle_noise_spectrum,
    oracle_two_point, Drive, Mode, ModeSet, TauGrid,
};
