//! Null coordinates, the uniformly accelerated trajectory, and the region /
//! side classification of Minkowski events relative to it.

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{finite, Error, Result};

/// `|λ|` below this value is reported as lying on the trajectory.
pub const LAMBDA_TOL: f64 = 1e-9;

/// A Minkowski event in null coordinates `u = t - x`, `v = t + x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub u: f64,
    pub v: f64,
}

impl SpacetimePoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        Ok(Self {
            u: finite(u, "u")?,
            v: finite(v, "v")?,
        })
    }

    pub fn t(&self) -> f64 {
        0.5 * (self.u + self.v)
    }

    pub fn x(&self) -> f64 {
        0.5 * (self.v - self.u)
    }

    /// `λ = 1 + a²uv`; zero on the trajectory, positive to its left.
    pub fn lambda(&self, a: f64) -> f64 {
        1.0 + a * a * self.u * self.v
    }
}

/// Converts inertial coordinates `(t, x)` to null coordinates.
pub fn to_null(t: f64, x: f64) -> Result<SpacetimePoint> {
    let t = finite(t, "t")?;
    let x = finite(x, "x")?;
    Ok(SpacetimePoint { u: t - x, v: t + x })
}

fn check_acceleration(a: f64) -> Result<f64> {
    let a = finite(a, "acceleration")?;
    if a <= 0.0 {
        return Err(Error::InvalidParameter(alloc::format!(
            "acceleration must be positive, got {a}"
        )));
    }
    Ok(a)
}

/// Event on the accelerated world line at proper time `tau`:
/// `x = cosh(aτ)/a`, `t = sinh(aτ)/a`.
pub fn trajectory(tau: f64, a: f64) -> Result<SpacetimePoint> {
    let a = check_acceleration(a)?;
    let tau = finite(tau, "tau")?;
    let e = (a * tau).exp();
    Ok(SpacetimePoint {
        u: -1.0 / (a * e),
        v: e / a,
    })
}

/// The four wedges cut out by the horizons `u = 0` and `v = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Future wedge, `u > 0, v > 0`.
    F,
    /// Past wedge, `u < 0, v < 0`.
    P,
    /// Rindler wedge containing the trajectory, `u < 0, v > 0`.
    R,
    /// Left wedge, `u > 0, v < 0`.
    L,
}

impl Region {
    pub fn tag(&self) -> &'static str {
        match self {
            Region::F => "F",
            Region::P => "P",
            Region::R => "R",
            Region::L => "L",
        }
    }
}

/// Horizon points are rejected: nothing downstream is defined on them.
pub fn classify_region(p: SpacetimePoint) -> Result<Region> {
    let SpacetimePoint { u, v } = p;
    if u == 0.0 || v == 0.0 || !u.is_finite() || !v.is_finite() {
        return Err(Error::BoundaryPoint { u, v });
    }
    Ok(match (u > 0.0, v > 0.0) {
        (true, true) => Region::F,
        (false, false) => Region::P,
        (false, true) => Region::R,
        (true, false) => Region::L,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `λ < 0`
    RightOfTrajectory,
    /// `λ > 0`
    LeftOfTrajectory,
    /// `|λ| < LAMBDA_TOL`
    OnTrajectory,
}

impl Side {
    pub fn tag(&self) -> &'static str {
        match self {
            Side::RightOfTrajectory => "right",
            Side::LeftOfTrajectory => "left",
            Side::OnTrajectory => "on",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySide {
    pub side: Side,
    pub lambda: f64,
}

pub fn side_of_trajectory(p: SpacetimePoint, a: f64) -> TrajectorySide {
    let lambda = p.lambda(a);
    let side = if lambda.abs() < LAMBDA_TOL {
        Side::OnTrajectory
    } else if lambda > 0.0 {
        Side::LeftOfTrajectory
    } else {
        Side::RightOfTrajectory
    };
    TrajectorySide { side, lambda }
}

/// Retarded proper time `-ln|au|/a` of a point right of the trajectory.
pub fn retarded_time_right(u: f64, a: f64) -> Result<f64> {
    let a = check_acceleration(a)?;
    if !(u < 0.0) {
        return Err(Error::Domain("right retarded time needs u < 0"));
    }
    Ok(-(a * u).abs().ln() / a)
}

/// Retarded proper time `ln|av|/a` of a point left of the trajectory.
pub fn retarded_time_left(v: f64, a: f64) -> Result<f64> {
    let a = check_acceleration(a)?;
    if !(v > 0.0) {
        return Err(Error::Domain("left retarded time needs v > 0"));
    }
    Ok((a * v).abs().ln() / a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const E: f64 = core::f64::consts::E;

    #[test]
    fn null_coordinates() {
        assert_eq!(to_null(0.0, 0.0).unwrap(), SpacetimePoint { u: 0.0, v: 0.0 });
        assert_eq!(to_null(0.0, 1.0).unwrap(), SpacetimePoint { u: -1.0, v: 1.0 });
        assert_eq!(to_null(2.0, 1.0).unwrap(), SpacetimePoint { u: 1.0, v: 3.0 });
        assert!(matches!(to_null(f64::NAN, 0.0), Err(Error::NonFinite(_))));
        assert!(matches!(to_null(0.0, f64::INFINITY), Err(Error::NonFinite(_))));
    }

    #[test]
    fn trajectory_points() {
        let p = trajectory(0.0, 1.0).unwrap();
        assert_eq!((p.u, p.v), (-1.0, 1.0));
        assert_eq!((p.t(), p.x()), (0.0, 1.0));
        let p = trajectory(2f64.ln(), 1.0).unwrap();
        assert!((p.u + 0.5).abs() < 1e-15 && (p.v - 2.0).abs() < 1e-15);
        let p = trajectory(0.0, 2.0).unwrap();
        assert_eq!((p.u, p.v), (-0.5, 0.5));
        assert!(matches!(trajectory(0.0, 0.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(trajectory(0.0, -1.0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn regions() {
        let r = |u, v| classify_region(SpacetimePoint { u, v });
        assert_eq!(r(-1.0, 1.0).unwrap(), Region::R);
        assert_eq!(r(1.0, 1.0).unwrap(), Region::F);
        assert_eq!(r(-1.0, -1.0).unwrap(), Region::P);
        assert_eq!(r(1.0, -1.0).unwrap(), Region::L);
        assert!(matches!(r(0.0, 1.0), Err(Error::BoundaryPoint { .. })));
        assert!(matches!(r(1.0, 0.0), Err(Error::BoundaryPoint { .. })));
    }

    #[test]
    fn sides() {
        let s = side_of_trajectory(SpacetimePoint { u: -1.0, v: 1.0 }, 1.0);
        assert_eq!(s.side, Side::OnTrajectory);
        assert_eq!(s.lambda, 0.0);
        let s = side_of_trajectory(SpacetimePoint { u: 1.0, v: 1.0 }, 1.0);
        assert_eq!((s.side, s.lambda), (Side::LeftOfTrajectory, 2.0));
        let s = side_of_trajectory(SpacetimePoint { u: -2.0, v: 1.0 }, 1.0);
        assert_eq!((s.side, s.lambda), (Side::RightOfTrajectory, -1.0));
    }

    #[test]
    fn retarded_times() {
        assert!((retarded_time_right(-(-2f64).exp(), 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(retarded_time_right(-1.0, 1.0).unwrap(), 0.0);
        assert_eq!(retarded_time_right(-0.5, 2.0).unwrap(), 0.0);
        assert!(matches!(retarded_time_right(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(retarded_time_right(1.0, 1.0), Err(Error::Domain(_))));

        assert!((retarded_time_left(E * E, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(retarded_time_left(1.0, 1.0).unwrap(), 0.0);
        let t = retarded_time_left(E, 2.0).unwrap();
        assert!((t - (2.0 * E).ln() / 2.0).abs() < 1e-15);
        assert!(matches!(retarded_time_left(-1.0, 1.0), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn round_trip(t in -1e3f64..1e3, x in -1e3f64..1e3) {
            let p = to_null(t, x).unwrap();
            prop_assert!((p.t() - t).abs() <= 1e-12 * (1.0 + t.abs() + x.abs()));
            prop_assert!((p.x() - x).abs() <= 1e-12 * (1.0 + t.abs() + x.abs()));
        }

        #[test]
        fn trajectory_has_zero_lambda(tau in -20f64..20.0, a in 0.01f64..2.0) {
            let p = trajectory(tau, a).unwrap();
            prop_assert!(p.lambda(a).abs() < 1e-12);
            prop_assert_eq!(side_of_trajectory(p, a).side, Side::OnTrajectory);
        }

        #[test]
        fn retarded_times_invert_trajectory(tau in -20f64..20.0, a in 0.01f64..2.0) {
            let p = trajectory(tau, a).unwrap();
            let tol = 1e-12 * (1.0 + tau.abs());
            prop_assert!((retarded_time_right(p.u, a).unwrap() - tau).abs() < tol);
            prop_assert!((retarded_time_left(p.v, a).unwrap() - tau).abs() < tol);
        }

        #[test]
        fn region_matches_signs(u in -1e3f64..1e3, v in -1e3f64..1e3) {
            prop_assume!(u != 0.0 && v != 0.0);
            let region = classify_region(SpacetimePoint { u, v }).unwrap();
            let expected = match (u.signum() as i32, v.signum() as i32) {
                (1, 1) => Region::F,
                (-1, -1) => Region::P,
                (-1, 1) => Region::R,
                _ => Region::L,
            };
            prop_assert_eq!(region, expected);
        }
    }
}
