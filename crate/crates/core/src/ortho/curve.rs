use serde::Serialize;

use super::{phi_curve, theta_curve, GradientMode, OrthoParams};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::surface::AnalyticCurve;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveBounds<T> {
    pub x_left: T,
    pub x_right: T,
    pub center_x: T,
}

impl<T: Real> CurveBounds<T> {
    pub fn width(&self) -> T {
        self.x_right - self.x_left
    }
}

/// Orthographic interval of a curve around `x0`, using exact slopes.
pub fn curve_bounds<T: Real>(curve: &AnalyticCurve<T>, x0: T, params: &OrthoParams<T>) -> Result<CurveBounds<T>> {
    curve_bounds_with_mode(curve, x0, params, GradientMode::Exact)
}

/// Marches from `x0` in steps of `dx` to each side and keeps the last abscissa
/// where both `θ ≤ ε` and `φ ≤ ε` hold. Marching also stops at the domain edge.
pub fn curve_bounds_with_mode<T: Real>(
    curve: &AnalyticCurve<T>,
    x0: T,
    params: &OrthoParams<T>,
    mode: GradientMode,
) -> Result<CurveBounds<T>> {
    let dom = curve.domain();
    if !(dom.contains(x0) && x0 > dom.lo && x0 < dom.hi) {
        return Err(Error::OutOfDomain { x: x0.to_f64_lossy(), y: f64::NAN });
    }
    if curve.is_nonsmooth_at(x0) {
        return Err(Error::NonSmoothPoint(x0.to_f64_lossy()));
    }
    let p0 = curve.deriv(x0)?;
    let curvature0 = match mode {
        GradientMode::Exact => T::zero(),
        GradientMode::FirstOrder => curve.deriv2(x0)?,
    };
    let march = |dir: T| -> Result<T> {
        let mut last = x0;
        let mut k: usize = 1;
        loop {
            let offset = T::from_usize(k).unwrap() * params.dx;
            let x = x0 + dir * offset;
            if !dom.contains(x) {
                return Ok(last);
            }
            let p = match mode {
                GradientMode::Exact => curve.deriv(x)?,
                GradientMode::FirstOrder => p0 + dir * offset * curvature0,
            };
            let theta = theta_curve(offset, params.d)?;
            if theta <= params.epsilon && phi_curve(p0, p) <= params.epsilon {
                last = x;
                k += 1;
            } else {
                return Ok(last);
            }
        }
    };
    Ok(CurveBounds { x_left: march(-T::one())?, x_right: march(T::one())?, center_x: x0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{catalog, Interval};
    use std::f64::consts::FRAC_PI_2;

    fn dom() -> Interval<f64> {
        Interval::new(-5.0, 5.0).unwrap()
    }

    /// Exhaustive oracle: extent of the accepted lattice points around x0.
    fn brute_bounds(curve: &AnalyticCurve<f64>, x0: f64, p: &OrthoParams<f64>) -> (f64, f64) {
        let p0 = curve.deriv(x0).unwrap();
        let mut lo = x0;
        let mut hi = x0;
        let n = ((curve.domain().span()) / p.dx).ceil() as i64;
        for k in -n..=n {
            let x = x0 + (k.unsigned_abs() as f64 * p.dx) * (k.signum() as f64);
            if !curve.domain().contains(x) {
                continue;
            }
            let theta = ((x - x0).abs() / p.d).atan();
            let q = curve.deriv(x).unwrap();
            let c = (p0 * q + 1.0) / ((p0 * p0 + 1.0).sqrt() * (q * q + 1.0).sqrt());
            let phi = c.clamp(-1.0, 1.0).acos();
            if theta <= p.epsilon && phi <= p.epsilon {
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
        (lo, hi)
    }

    #[test]
    fn flat_curve_is_bounded_by_fov() {
        let c = catalog::constant(1.0, dom());
        let p = OrthoParams::from_degrees(10.0, 2.0, 1e-3, 1e-3).unwrap();
        let b = curve_bounds(&c, 0.5, &p).unwrap();
        let r = 2.0 * 10f64.to_radians().tan();
        assert!((b.x_right - 0.5 - r).abs() <= 1e-3);
        assert!((0.5 - b.x_left - r).abs() <= 1e-3);
        assert!(b.x_left <= b.center_x && b.center_x <= b.x_right);
    }

    #[test]
    fn sine_apex_matches_exhaustive_scan() {
        let c = catalog::sine(dom());
        let p = OrthoParams::from_degrees(10.0, 0.5, 1e-4, 1e-4).unwrap();
        let b = curve_bounds(&c, FRAC_PI_2, &p).unwrap();
        let (lo, hi) = brute_bounds(&c, FRAC_PI_2, &p);
        assert!((b.x_left - lo).abs() < 1e-12 && (b.x_right - hi).abs() < 1e-12, "{b:?} vs {lo} {hi}");
    }

    #[test]
    fn sine_bounds_saturate_in_d() {
        let c = catalog::sine(dom());
        let near = OrthoParams::from_degrees(10.0, 10.0, 1e-4, 1e-4).unwrap();
        let far = OrthoParams::from_degrees(10.0, 100.0, 1e-4, 1e-4).unwrap();
        let w10 = curve_bounds(&c, FRAC_PI_2, &near).unwrap().width();
        let w100 = curve_bounds(&c, FRAC_PI_2, &far).unwrap().width();
        assert!((w100 - w10).abs() <= 0.01 * w10);
    }

    #[test]
    fn marching_stops_at_domain_edge() {
        let c = catalog::constant(0.0, Interval::new(0.0, 1.0).unwrap());
        let p = OrthoParams::from_degrees(20.0, 100.0, 0.01, 0.01).unwrap();
        let b = curve_bounds(&c, 0.5, &p).unwrap();
        assert!(b.x_left >= 0.0 && b.x_left < 0.011);
        assert!(b.x_right <= 1.0 && b.x_right > 0.989);
    }

    #[test]
    fn rejects_kinks_and_outside_centers() {
        let c = catalog::absolute_slope(0.5, dom()).unwrap();
        let p = OrthoParams::from_degrees(10.0, 1.0, 1e-3, 1e-3).unwrap();
        assert!(matches!(curve_bounds(&c, 0.0, &p), Err(Error::NonSmoothPoint(_))));
        assert!(curve_bounds(&c, 7.0, &p).is_err());
    }

    #[test]
    fn first_order_mode_agrees_for_small_windows() {
        let c = catalog::parabola(dom());
        let p = OrthoParams::from_degrees(10.0, 0.2, 1e-4, 1e-4).unwrap();
        // the parabola has constant f'' so the linearization is exact
        let exact = curve_bounds(&c, 1.0, &p).unwrap();
        let fast = curve_bounds_with_mode(&c, 1.0, &p, GradientMode::FirstOrder).unwrap();
        assert!((exact.width() - fast.width()).abs() < 1e-9);
    }
}
