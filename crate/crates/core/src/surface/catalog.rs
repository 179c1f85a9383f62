//! Built-in analytic test surfaces and curves.
//!
//! Every entry carries exact derivatives. Domains default to the ranges used in
//! the experiments and can be overridden with the `x_lo`/`x_hi`/`y_lo`/`y_hi`
//! (surfaces) or `lo`/`hi` (curves) parameters.

use std::collections::BTreeMap;

use super::{AnalyticCurve, AnalyticSurface, Hessian, Interval, Rect};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    Surface,
    Curve,
}

/// Documentation record for one catalog entry.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub formula: &'static str,
    /// Family parameters with their defaults (domain keys excluded).
    pub params: &'static [(&'static str, f64)],
    pub nonsmooth: &'static [f64],
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "plane",
        kind: EntryKind::Surface,
        formula: "z = slope_x*x + slope_y*y + offset",
        params: &[("slope_x", 0.0), ("slope_y", 0.0), ("offset", 0.0)],
        nonsmooth: &[],
    },
    CatalogEntry {
        name: "cos_plus_cos",
        kind: EntryKind::Surface,
        formula: "z = cos(x) + cos(y)",
        params: &[],
        nonsmooth: &[],
    },
    CatalogEntry {
        name: "cos2_plus_cos2",
        kind: EntryKind::Surface,
        formula: "z = cos(x)^2 + cos(y)^2",
        params: &[],
        nonsmooth: &[],
    },
    CatalogEntry {
        name: "sphere",
        kind: EntryKind::Surface,
        formula: "z = -sqrt(radius^2 - x^2 - y^2)",
        params: &[("radius", 5.0)],
        nonsmooth: &[],
    },
    CatalogEntry {
        name: "pseudosphere",
        kind: EntryKind::Surface,
        formula: "z = a*ln((a + s)/r) - s, r = hypot(x, y), s = sqrt(a^2 - r^2)",
        params: &[("a", 2.0)],
        nonsmooth: &[],
    },
    CatalogEntry { name: "sine", kind: EntryKind::Curve, formula: "y = sin(x)", params: &[], nonsmooth: &[] },
    CatalogEntry { name: "parabola", kind: EntryKind::Curve, formula: "y = x^2", params: &[], nonsmooth: &[] },
    CatalogEntry {
        name: "exp_sqrt_abs",
        kind: EntryKind::Curve,
        formula: "y = exp(sqrt(|x|))",
        params: &[],
        nonsmooth: &[0.0],
    },
    CatalogEntry {
        name: "absolute_slope",
        kind: EntryKind::Curve,
        formula: "y = |m*x|",
        params: &[("m", 1.0)],
        nonsmooth: &[0.0],
    },
    CatalogEntry { name: "constant", kind: EntryKind::Curve, formula: "y = c", params: &[("c", 0.0)], nonsmooth: &[] },
    CatalogEntry {
        name: "circle_arc",
        kind: EntryKind::Curve,
        formula: "y = -sqrt(radius^2 - x^2)",
        params: &[("radius", 1.0)],
        nonsmooth: &[],
    },
];

/// A catalog object: either a surface or a curve.
#[derive(Debug, Clone)]
pub enum Builtin<T> {
    Surface(AnalyticSurface<T>),
    Curve(AnalyticCurve<T>),
}

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

struct ParamReader<'a> {
    entry: &'static CatalogEntry,
    given: &'a BTreeMap<String, f64>,
}

impl ParamReader<'_> {
    fn validate_keys(&self) -> Result<()> {
        let domain_keys: &[&str] = match self.entry.kind {
            EntryKind::Surface => &["x_lo", "x_hi", "y_lo", "y_hi"],
            EntryKind::Curve => &["lo", "hi"],
        };
        for (k, v) in self.given {
            let known = self.entry.params.iter().any(|(p, _)| p == k) || domain_keys.contains(&k.as_str());
            if !known {
                return Err(Error::param(k, format!("not a parameter of `{}`", self.entry.name)));
            }
            if !v.is_finite() {
                return Err(Error::param(k, "must be finite"));
            }
        }
        Ok(())
    }

    fn get(&self, key: &str, default: f64) -> f64 {
        self.given.get(key).copied().unwrap_or(default)
    }

    fn family<T: Real>(&self, key: &str) -> T {
        let default =
            self.entry.params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).expect("declared catalog parameter");
        T::lit(self.get(key, default))
    }

    fn rect<T: Real>(&self, default: [f64; 4]) -> Result<Rect<T>> {
        Rect::new(
            T::lit(self.get("x_lo", default[0])),
            T::lit(self.get("x_hi", default[1])),
            T::lit(self.get("y_lo", default[2])),
            T::lit(self.get("y_hi", default[3])),
        )
    }

    fn interval<T: Real>(&self, default: [f64; 2]) -> Result<Interval<T>> {
        Interval::new(T::lit(self.get("lo", default[0])), T::lit(self.get("hi", default[1])))
    }
}

/// Looks up `name` in the catalog and instantiates it with `params`
/// (missing parameters take their defaults).
pub fn builtin<T: Real>(name: &str, params: &BTreeMap<String, f64>) -> Result<Builtin<T>> {
    let entry = entry(name).ok_or_else(|| Error::UnknownSurface(name.to_string()))?;
    let r = ParamReader { entry, given: params };
    r.validate_keys()?;
    Ok(match name {
        "plane" => Builtin::Surface(plane(
            r.family("slope_x"),
            r.family("slope_y"),
            r.family("offset"),
            r.rect([-5.0, 5.0, -5.0, 5.0])?,
        )),
        "cos_plus_cos" => Builtin::Surface(cos_plus_cos(r.rect([-5.0, 5.0, -5.0, 5.0])?)),
        "cos2_plus_cos2" => Builtin::Surface(cos2_plus_cos2(r.rect([-5.0, 5.0, -5.0, 5.0])?)),
        "sphere" => {
            let radius: f64 = r.family("radius");
            let h = 0.6 * radius;
            Builtin::Surface(sphere(T::lit(radius), r.rect([-h, h, -h, h])?)?)
        }
        "pseudosphere" => {
            let a: f64 = r.family("a");
            Builtin::Surface(pseudosphere(T::lit(a), r.rect([0.2 * a, 0.9 * a, -0.4 * a, 0.4 * a])?)?)
        }
        "sine" => Builtin::Curve(sine(r.interval([-5.0, 5.0])?)),
        "parabola" => Builtin::Curve(parabola(r.interval([-5.0, 5.0])?)),
        "exp_sqrt_abs" => Builtin::Curve(exp_sqrt_abs(r.interval([-5.0, 5.0])?)),
        "absolute_slope" => Builtin::Curve(absolute_slope(r.family("m"), r.interval([-5.0, 5.0])?)?),
        "constant" => Builtin::Curve(constant(r.family("c"), r.interval([-5.0, 5.0])?)),
        "circle_arc" => {
            let radius: f64 = r.family("radius");
            let h = 0.99 * radius;
            Builtin::Curve(circle_arc(T::lit(radius), r.interval([-h, h])?)?)
        }
        _ => unreachable!("catalog entry without constructor"),
    })
}

pub fn builtin_surface<T: Real>(name: &str, params: &BTreeMap<String, f64>) -> Result<AnalyticSurface<T>> {
    match builtin(name, params)? {
        Builtin::Surface(s) => Ok(s),
        Builtin::Curve(_) => Err(Error::param("surface", format!("`{name}` is a curve, not a surface"))),
    }
}

pub fn builtin_curve<T: Real>(name: &str, params: &BTreeMap<String, f64>) -> Result<AnalyticCurve<T>> {
    match builtin(name, params)? {
        Builtin::Curve(c) => Ok(c),
        Builtin::Surface(_) => Err(Error::param("curve", format!("`{name}` is a surface, not a curve"))),
    }
}

pub fn plane<T: Real>(slope_x: T, slope_y: T, offset: T, domain: Rect<T>) -> AnalyticSurface<T> {
    AnalyticSurface::new(
        "plane",
        domain,
        move |x, y| slope_x * x + slope_y * y + offset,
        move |_, _| (slope_x, slope_y),
        |_, _| Hessian::zero(),
    )
}

pub fn cos_plus_cos<T: Real>(domain: Rect<T>) -> AnalyticSurface<T> {
    AnalyticSurface::new(
        "cos_plus_cos",
        domain,
        |x: T, y: T| x.cos() + y.cos(),
        |x: T, y: T| (-x.sin(), -y.sin()),
        |x: T, y: T| Hessian::symmetric(-x.cos(), T::zero(), -y.cos()),
    )
}

pub fn cos2_plus_cos2<T: Real>(domain: Rect<T>) -> AnalyticSurface<T> {
    let two = T::two();
    AnalyticSurface::new(
        "cos2_plus_cos2",
        domain,
        |x: T, y: T| x.cos().powi(2) + y.cos().powi(2),
        move |x: T, y: T| (-(two * x).sin(), -(two * y).sin()),
        move |x: T, y: T| Hessian::symmetric(-two * (two * x).cos(), T::zero(), -two * (two * y).cos()),
    )
}

/// Lower hemisphere (a bowl) of radius `radius` centred at the origin; its
/// lowest point sits at `(0, 0, -radius)`.
pub fn sphere<T: Real>(radius: T, domain: Rect<T>) -> Result<AnalyticSurface<T>> {
    if !(radius > T::zero()) {
        return Err(Error::param("radius", "must be > 0"));
    }
    let corners = [
        (domain.x_lo, domain.y_lo),
        (domain.x_lo, domain.y_hi),
        (domain.x_hi, domain.y_lo),
        (domain.x_hi, domain.y_hi),
    ];
    if corners.iter().any(|&(x, y)| x.hypot(y) >= radius) {
        return Err(Error::param("domain", "sphere patch must lie strictly inside the radius"));
    }
    let r2 = radius * radius;
    Ok(AnalyticSurface::new(
        "sphere",
        domain,
        move |x: T, y: T| -(r2 - x * x - y * y).sqrt(),
        move |x: T, y: T| {
            let s = (r2 - x * x - y * y).sqrt();
            (x / s, y / s)
        },
        move |x: T, y: T| {
            let s2 = r2 - x * x - y * y;
            let s3 = s2 * s2.sqrt();
            Hessian::symmetric((r2 - y * y) / s3, x * y / s3, (r2 - x * x) / s3)
        },
    ))
}

/// Graph patch of the pseudosphere (tractrix of radius `a` revolved about the
/// z axis). The graph is defined for `0 < hypot(x, y) < a`.
pub fn pseudosphere<T: Real>(a: T, domain: Rect<T>) -> Result<AnalyticSurface<T>> {
    if !(a > T::zero()) {
        return Err(Error::param("a", "must be > 0"));
    }
    let corners = [
        (domain.x_lo, domain.y_lo),
        (domain.x_lo, domain.y_hi),
        (domain.x_hi, domain.y_lo),
        (domain.x_hi, domain.y_hi),
    ];
    if corners.iter().any(|&(x, y)| x.hypot(y) >= a) {
        return Err(Error::param("domain", "pseudosphere patch must satisfy hypot(x, y) < a"));
    }
    if domain.contains(T::zero(), T::zero()) {
        return Err(Error::param("domain", "pseudosphere patch must exclude the axis r = 0"));
    }
    let a2 = a * a;
    // Radial profile g(r) and its derivatives; g' = -s/r, g'' = a²/(s·r²).
    let radial = move |x: T, y: T| {
        let r2 = x * x + y * y;
        let r = r2.sqrt();
        let s = (a2 - r2).sqrt();
        (r, s)
    };
    Ok(AnalyticSurface::new(
        "pseudosphere",
        domain,
        move |x: T, y: T| {
            let (r, s) = radial(x, y);
            a * ((a + s) / r).ln() - s
        },
        move |x: T, y: T| {
            let (r, s) = radial(x, y);
            let g1 = -s / r;
            (g1 * x / r, g1 * y / r)
        },
        move |x: T, y: T| {
            let (r, s) = radial(x, y);
            let r2 = r * r;
            let g1 = -s / r;
            let g2 = a2 / (s * r2);
            let r3 = r2 * r;
            Hessian::symmetric(
                g2 * x * x / r2 + g1 * y * y / r3,
                (g2 / r2 - g1 / r3) * x * y,
                g2 * y * y / r2 + g1 * x * x / r3,
            )
        },
    ))
}

pub fn sine<T: Real>(domain: Interval<T>) -> AnalyticCurve<T> {
    AnalyticCurve::new("sine", domain, |x: T| x.sin(), |x: T| x.cos(), |x: T| -x.sin())
}

pub fn parabola<T: Real>(domain: Interval<T>) -> AnalyticCurve<T> {
    AnalyticCurve::new("parabola", domain, |x: T| x * x, |x: T| T::two() * x, |_| T::two())
}

pub fn exp_sqrt_abs<T: Real>(domain: Interval<T>) -> AnalyticCurve<T> {
    let four = T::lit(4.0);
    AnalyticCurve::new(
        "exp_sqrt_abs",
        domain,
        |x: T| x.abs().sqrt().exp(),
        |x: T| {
            if x == T::zero() {
                return T::infinity();
            }
            let u = x.abs().sqrt();
            x.signum() * u.exp() / (T::two() * u)
        },
        move |x: T| {
            if x == T::zero() {
                return T::neg_infinity();
            }
            let ax = x.abs();
            let u = ax.sqrt();
            u.exp() * (u - T::one()) / (four * ax * u)
        },
    )
    .with_nonsmooth_points(vec![T::zero()])
}

pub fn absolute_slope<T: Real>(m: T, domain: Interval<T>) -> Result<AnalyticCurve<T>> {
    if m == T::zero() {
        return Err(Error::param("m", "must be non-zero"));
    }
    let am = m.abs();
    Ok(AnalyticCurve::new(
        "absolute_slope",
        domain,
        move |x: T| (m * x).abs(),
        move |x: T| if x < T::zero() { -am } else { am },
        |_| T::zero(),
    )
    .with_nonsmooth_points(vec![T::zero()]))
}

pub fn constant<T: Real>(c: T, domain: Interval<T>) -> AnalyticCurve<T> {
    AnalyticCurve::new("constant", domain, move |_| c, |_| T::zero(), |_| T::zero())
}

/// Lower half of the circle of radius `radius` about the origin.
pub fn circle_arc<T: Real>(radius: T, domain: Interval<T>) -> Result<AnalyticCurve<T>> {
    if !(radius > T::zero()) {
        return Err(Error::param("radius", "must be > 0"));
    }
    if domain.lo <= -radius || domain.hi >= radius {
        return Err(Error::param("domain", "arc domain must lie strictly inside (-radius, radius)"));
    }
    let r2 = radius * radius;
    Ok(AnalyticCurve::new(
        "circle_arc",
        domain,
        move |x: T| -(r2 - x * x).sqrt(),
        move |x: T| x / (r2 - x * x).sqrt(),
        move |x: T| {
            let s2 = r2 - x * x;
            r2 / (s2 * s2.sqrt())
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{gaussian_curvature_at, Surface};

    fn none() -> BTreeMap<String, f64> {
        BTreeMap::new()
    }

    #[test]
    fn sine_derivative_at_origin_is_one() {
        let c = builtin_curve::<f64>("sine", &none()).unwrap();
        assert_eq!(c.deriv(0.0).unwrap(), 1.0);
        assert!(c.smooth_everywhere());
    }

    #[test]
    fn absolute_slope_declares_kink_at_origin() {
        let mut p = none();
        p.insert("m".into(), 0.5);
        let c = builtin_curve::<f64>("absolute_slope", &p).unwrap();
        assert_eq!(c.nonsmooth_points(), &[0.0]);
        assert!(!c.smooth_everywhere());
        // right-sided convention at the kink
        assert_eq!(c.deriv(0.0).unwrap(), 0.5);
        assert_eq!(c.deriv(-1.0).unwrap(), -0.5);
    }

    #[test]
    fn exp_sqrt_abs_is_flagged_nonsmooth() {
        let c = builtin_curve::<f64>("exp_sqrt_abs", &none()).unwrap();
        assert_eq!(c.nonsmooth_points(), &[0.0]);
    }

    #[test]
    fn cos_plus_cos_apex() {
        let s = builtin_surface::<f64>("cos_plus_cos", &none()).unwrap();
        assert_eq!(s.height(0.0, 0.0).unwrap(), 2.0);
        assert_eq!(s.gradient(0.0, 0.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn unknown_name_and_bad_params_are_rejected() {
        assert!(matches!(builtin::<f64>("torus", &none()), Err(Error::UnknownSurface(_))));
        let mut p = none();
        p.insert("radius".into(), -1.0);
        assert!(matches!(builtin::<f64>("sphere", &p), Err(Error::InvalidParameter { .. })));
        let mut p = none();
        p.insert("bogus".into(), 1.0);
        assert!(matches!(builtin::<f64>("plane", &p), Err(Error::InvalidParameter { .. })));
        let mut p = none();
        p.insert("a".into(), 0.0);
        assert!(builtin::<f64>("pseudosphere", &p).is_err());
        assert!(builtin_curve::<f64>("plane", &none()).is_err());
        assert!(builtin_surface::<f64>("sine", &none()).is_err());
    }

    #[test]
    fn sphere_apex_curvature() {
        let s = builtin_surface::<f64>("sphere", &none()).unwrap();
        let k = gaussian_curvature_at(&s, 0.0, 0.0).unwrap();
        assert!((k - 1.0 / 25.0).abs() < 1e-15);
    }

    #[test]
    fn pseudosphere_has_constant_negative_curvature() {
        let s = builtin_surface::<f64>("pseudosphere", &none()).unwrap();
        let k1 = gaussian_curvature_at(&s, 0.6, 0.1).unwrap();
        let k2 = gaussian_curvature_at(&s, 1.5, -0.5).unwrap();
        assert!((k1 + 0.25).abs() < 1e-6, "{k1}");
        assert!((k1 - k2).abs() < 1e-6);
    }

    #[test]
    fn every_entry_instantiates_with_defaults() {
        for e in CATALOG {
            let b = builtin::<f64>(e.name, &none()).unwrap();
            match (b, e.kind) {
                (Builtin::Surface(_), EntryKind::Surface) | (Builtin::Curve(_), EntryKind::Curve) => {}
                _ => panic!("kind mismatch for {}", e.name),
            }
        }
    }
}
