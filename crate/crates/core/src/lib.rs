//! Imaging geometry and ε-orthographic regions on heightfields and analytic
//! surfaces.
//!
//! * [`surface`]: heightfields (PGM DEMs), analytic catalog surfaces and
//!   curves, gradients, Hessians and Gaussian curvature.
//! * [`imaging`]: imaging points and curves at a working distance, validity
//!   of imaging curves, and the bisection upper bound on the distance.
//! * [`ortho`]: θ/φ acceptance, curve bounds, ring-grown surface regions and
//!   their outlines.
//! * [`approx`]: polygonal, elliptical and circular boundary approximations and
//!   the accuracy/time comparison harness.
//! * [`export`]: CSV, SVG and JSON emitters.
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`); the `*F64`
//! aliases below fix the scalar for the common case.

// NaN-rejecting checks are written as `!(x > 0)` on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
mod error;
pub mod export;
pub mod geometry;
pub mod imaging;
pub mod ortho;
mod scalar;
pub mod surface;

pub use error::{Error, Result};
pub use scalar::Real;

pub use approx::{
    approx_circular_one, approx_circular_two, approx_elliptical, approx_polygonal, compare, ray_bound,
    ApproxComparison, ApproxShape, BoundaryApprox, CompareConfig, DirectionalBound, Method,
};
pub use imaging::{
    curve_validity, imaging_curve, imaging_point, unit_normal, upper_bound_d, BoundKind, ImagingSample, Orientation,
    UpperBound, ValidityReport,
};
pub use ortho::{
    brute_force_region, circle_coverage, curve_bounds, pair_gen, phi_curve, phi_surface, region_boundary,
    surface_region, theta_curve, theta_surface, CurveBounds, GradientMode, OrthoParams, OrthoRegion, RegionOptions,
};
pub use surface::{
    builtin, builtin_curve, builtin_surface, gaussian_curvature_at, gradient_at, pgm::load_dem, AnalyticCurve,
    AnalyticSurface, HeightField, Hessian, Interval, Rect, Surface,
};

pub type HeightFieldF64 = HeightField<f64>;
pub type HeightFieldF32 = HeightField<f32>;
pub type AnalyticSurfaceF64 = AnalyticSurface<f64>;
pub type AnalyticSurfaceF32 = AnalyticSurface<f32>;
pub type AnalyticCurveF64 = AnalyticCurve<f64>;
pub type AnalyticCurveF32 = AnalyticCurve<f32>;
pub type OrthoParamsF64 = OrthoParams<f64>;
pub type OrthoParamsF32 = OrthoParams<f32>;
pub type OrthoRegionF64 = OrthoRegion<f64>;
pub type OrthoRegionF32 = OrthoRegion<f32>;
pub type BoundaryApproxF64 = BoundaryApprox<f64>;
pub type UpperBoundF64 = UpperBound<f64>;
pub type ApproxComparisonF64 = ApproxComparison<f64>;
