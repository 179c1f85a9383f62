//! ε-orthography: the FOV (θ) and normal-deviation (φ) tests, curve bounds,
//! surface region growing, boundary extraction and the circle-case formulas.
//!
//! A probe point belongs to the orthographic region of a center when both
//! `θ ≤ ε` and `φ ≤ ε`, where θ is the angle under which the probe is seen
//! from the camera above the center and φ is the angle between the two
//! surface normals. φ is always measured against the center's normal.

mod contour;
mod curve;
mod region;

pub use contour::{region_boundary, region_contours, RegionMask};
pub use curve::{curve_bounds, curve_bounds_with_mode, CurveBounds};
pub(crate) use region::Acceptor;
pub use region::{brute_force_region, pair_gen, surface_region, Member, OrthoRegion, RegionOptions};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Angular FOV, working distance and probe grid resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoParams<T> {
    /// Half-angle ε in radians, `0 < ε < π/2`.
    pub epsilon: T,
    pub d: T,
    pub dx: T,
    pub dy: T,
}

impl<T: Real> OrthoParams<T> {
    pub fn new(epsilon: T, d: T, dx: T, dy: T) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > T::zero() && epsilon < T::FRAC_PI_2()) {
            return Err(Error::param("epsilon", "must lie in (0, π/2) radians"));
        }
        for (name, v) in [("d", d), ("dx", dx), ("dy", dy)] {
            if !(v.is_finite() && v > T::zero()) {
                return Err(Error::param(name, "must be finite and > 0"));
            }
        }
        Ok(Self { epsilon, d, dx, dy })
    }

    pub fn from_degrees(epsilon_deg: T, d: T, dx: T, dy: T) -> Result<Self> {
        Self::new(epsilon_deg.to_radians(), d, dx, dy)
    }

    /// Radius of the FOV disc on a plane, `d·tan ε`.
    pub fn fov_radius(&self) -> T {
        self.d * self.epsilon.tan()
    }
}

/// How probe-point gradients are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GradientMode {
    /// Derivatives evaluated at the probe point.
    #[default]
    Exact,
    /// First-order Taylor step from the center: `∇f(P') ≈ ∇f(P) + H·Δ`.
    FirstOrder,
}

fn clamp_unit<T: Real>(c: T) -> T {
    c.max(-T::one()).min(T::one())
}

/// Angle between the normals of a curve with slopes `p0` and `p`.
pub fn phi_curve<T: Real>(p0: T, p: T) -> T {
    let c = (p0 * p + T::one()) / ((p0 * p0 + T::one()).sqrt() * (p * p + T::one()).sqrt());
    clamp_unit(c).acos()
}

/// FOV angle of a probe `delta_x` away from the center, seen from height `d`.
pub fn theta_curve<T: Real>(delta_x: T, d: T) -> Result<T> {
    if !(d > T::zero()) {
        return Err(Error::param("d", "must be > 0"));
    }
    Ok((delta_x.abs() / d).atan())
}

/// Angle between the normals of a surface with gradients `(p0, q0)` and `(p, q)`.
pub fn phi_surface<T: Real>(p0: T, q0: T, p: T, q: T) -> T {
    let c = (p0 * p + q0 * q + T::one()) / ((p0 * p0 + q0 * q0 + T::one()).sqrt() * (p * p + q * q + T::one()).sqrt());
    clamp_unit(c).acos()
}

pub fn theta_surface<T: Real>(delta_x: T, delta_y: T, d: T) -> Result<T> {
    if !(d > T::zero()) {
        return Err(Error::param("d", "must be > 0"));
    }
    Ok((delta_x.hypot(delta_y) / d).atan())
}

/// Capture counts and imageable arc lengths for a circular target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleCoverage<T> {
    /// Captures from the center needed to cover the full circle, `⌈2π/ε⌉`.
    pub captures: u64,
    /// Arc length per unit radius imageable from the center (d = R): `2π`.
    pub arc_centered: T,
    /// Arc length per unit radius imageable from an eccentric point: `2ε`.
    pub arc_eccentric: T,
}

pub fn circle_coverage<T: Real>(epsilon: T) -> Result<CircleCoverage<T>> {
    if !(epsilon.is_finite() && epsilon > T::zero() && epsilon < T::PI()) {
        return Err(Error::param("epsilon", "must lie in (0, π)"));
    }
    let ratio = (T::TAU() / epsilon).to_f64_lossy();
    // 2π/(π/18) evaluates to 36.000000000000004; snap ratios that are integral up to rounding
    let captures = if (ratio - ratio.round()).abs() <= 1e-9 * ratio { ratio.round() } else { ratio.ceil() };
    Ok(CircleCoverage { captures: captures as u64, arc_centered: T::TAU(), arc_eccentric: epsilon + epsilon })
}
