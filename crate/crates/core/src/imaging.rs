//! Imaging points, imaging curves and the working-distance upper bound.
//!
//! A camera capturing the surface point `P` sits at `P' = P + d·n̂`, where `n̂`
//! is the unit surface normal. With [`Orientation::Up`] (the default) the
//! camera is above the terrain; [`Orientation::Down`] reproduces the literal
//! `(p, q, −1)` normal, which places it below.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::surface::{AnalyticCurve, Interval, Surface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Up,
    Down,
}

/// Unit normal of a graph surface with gradient `(p, q)`.
///
/// `Down` is `(p, q, −1)/√(p²+q²+1)`; `Up` is its negation.
pub fn unit_normal<T: Real>(p: T, q: T, orientation: Orientation) -> Result<[T; 3]> {
    if !(p.is_finite() && q.is_finite()) {
        return Err(Error::NonFinite("gradient"));
    }
    let norm = (p * p + q * q + T::one()).sqrt();
    let down = [p / norm, q / norm, -T::one() / norm];
    Ok(match orientation {
        Orientation::Down => down,
        Orientation::Up => [-down[0], -down[1], -down[2]],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImagingSample<T> {
    pub base: [T; 3],
    pub image: [T; 3],
    pub d: T,
    pub unit_normal: [T; 3],
}

fn check_distance<T: Real>(d: T) -> Result<()> {
    if d.is_finite() && d > T::zero() {
        Ok(())
    } else {
        Err(Error::param("d", "working distance must be finite and > 0"))
    }
}

/// Camera position for the surface point above `(x, y)` at working distance `d`.
pub fn imaging_point<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x: T,
    y: T,
    d: T,
    orientation: Orientation,
) -> Result<ImagingSample<T>> {
    check_distance(d)?;
    let z = surface.height(x, y)?;
    let (p, q) = surface.gradient(x, y)?;
    let n = unit_normal(p, q, orientation)?;
    Ok(ImagingSample { base: [x, y, z], image: [x + d * n[0], y + d * n[1], z + d * n[2]], d, unit_normal: n })
}

/// Point of the imaging curve at distance `d` above the curve point at `x`:
/// `x' = x − d·f'/√(1+f'²)`, `y' = f + d/√(1+f'²)`.
pub fn imaging_curve<T: Real>(curve: &AnalyticCurve<T>, x: T, d: T) -> Result<(T, T)> {
    check_distance(d)?;
    if curve.is_nonsmooth_at(x) {
        return Err(Error::NonSmoothPoint(x.to_f64_lossy()));
    }
    let f = curve.eval(x)?;
    let fp = curve.deriv(x)?;
    Ok(offset_point(x, f, fp, d))
}

#[inline]
fn offset_point<T: Real>(x: T, f: T, fp: T, d: T) -> (T, T) {
    if fp.is_infinite() {
        // vertical tangent: the normal is horizontal
        return (x - d * fp.signum(), f);
    }
    let w = (T::one() + fp * fp).sqrt();
    (x - d * fp / w, f + d / w)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidityReport<T> {
    pub valid: bool,
    /// Curve abscissae whose imaging point falls strictly below the curve.
    pub violations: Vec<T>,
    pub d: T,
}

/// Default scan step for validity checks: the domain span over 2048.
pub fn default_scan_resolution<T: Real>(domain: Interval<T>) -> T {
    domain.span() / T::lit(2048.0)
}

/// Number of geometrically shrinking offsets sampled on each side of a kink.
const KINK_REFINEMENT_LEVELS: i32 = 40;

/// Sample abscissae for a validity scan: a regular lattice at `step`, with any
/// lattice point that lands on a declared kink replaced by points offset
/// `±step/2, ±step/4, …` from it.
pub fn scan_samples<T: Real>(curve: &AnalyticCurve<T>, step: T) -> Vec<T> {
    let dom = curve.domain();
    let n = (dom.span() / step).floor().to_usize().unwrap_or(0);
    let eps = step * T::lit(1e-9);
    let kinks: Vec<T> = curve.nonsmooth_points().iter().copied().filter(|&k| dom.contains(k)).collect();
    let mut xs: Vec<T> = (0..=n)
        .map(|k| dom.lo + T::from_usize(k).unwrap() * step)
        .chain(std::iter::once(dom.hi))
        .filter(|&x| x <= dom.hi && kinks.iter().all(|&k| (x - k).abs() > eps))
        .collect();
    for &k in &kinks {
        let mut off = step * T::half();
        for _ in 0..=KINK_REFINEMENT_LEVELS {
            for x in [k - off, k + off] {
                if dom.contains(x) && x != k {
                    xs.push(x);
                }
            }
            off = off * T::half();
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    xs
}

/// Checks whether the imaging curve at distance `d` stays on or above the curve.
///
/// A sample `x` violates when its imaging point `(x', y')` has `x'` inside the
/// domain and `y' < f(x')`; tangency counts as valid.
pub fn curve_validity<T: Real>(curve: &AnalyticCurve<T>, d: T, scan_resolution: T) -> Result<ValidityReport<T>> {
    check_distance(d)?;
    if !(scan_resolution.is_finite() && scan_resolution > T::zero()) {
        return Err(Error::param("scan_resolution", "must be finite and > 0"));
    }
    let dom = curve.domain();
    let violations: Vec<T> = scan_samples(curve, scan_resolution)
        .into_iter()
        .filter(|&x| {
            let (xi, yi) = offset_point(x, curve.eval_raw(x), curve.deriv_raw(x), d);
            dom.contains(xi) && yi < curve.eval_raw(xi)
        })
        .collect();
    Ok(ValidityReport { valid: violations.is_empty(), violations, d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Finite,
    Infinite,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpperBound<T> {
    pub kind: BoundKind,
    pub value: Option<T>,
    pub tolerance: T,
    pub domain: Interval<T>,
    /// Every probed distance with its validity, in probe order.
    pub probes: Vec<(T, bool)>,
}

/// Doubling stops (and the bound is reported infinite) once the upper probe exceeds this.
pub const UPPER_BOUND_CAP: f64 = 1e6;

/// Largest working distance keeping the whole imaging curve valid, by bisection.
///
/// Brackets by doubling from 1 (infinite once past [`UPPER_BOUND_CAP`]);
/// reports zero when `d = tolerance` is already invalid; otherwise bisects
/// until the bracket is no wider than `tolerance` and returns its midpoint.
pub fn upper_bound_d<T: Real>(curve: &AnalyticCurve<T>, tolerance: T, scan_resolution: T) -> Result<UpperBound<T>> {
    if !(tolerance.is_finite() && tolerance > T::zero()) {
        return Err(Error::param("tolerance", "must be finite and > 0"));
    }
    let mut probes = Vec::new();
    let mut valid = |d: T| -> Result<bool> {
        let ok = curve_validity(curve, d, scan_resolution)?.valid;
        probes.push((d, ok));
        Ok(ok)
    };
    let result = |kind, value, probes| UpperBound { kind, value, tolerance, domain: curve.domain(), probes };

    if !valid(tolerance)? {
        return Ok(result(BoundKind::Zero, None, probes));
    }
    let cap = T::lit(UPPER_BOUND_CAP);
    let mut lower = tolerance;
    let mut upper = T::one().max(tolerance + tolerance);
    while valid(upper)? {
        lower = upper;
        upper = upper + upper;
        if upper > cap {
            return Ok(result(BoundKind::Infinite, None, probes));
        }
    }
    while upper - lower > tolerance {
        let mid = (lower + upper) * T::half();
        if valid(mid)? {
            lower = mid;
        } else {
            upper = mid;
        }
    }
    Ok(result(BoundKind::Finite, Some((lower + upper) * T::half()), probes))
}
