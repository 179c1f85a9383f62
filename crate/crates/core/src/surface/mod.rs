//! Surfaces `z = f(x, y)` and curves `y = f(x)`: sampled heightfields, closed-form
//! analytic definitions, and the built-in catalog used by experiments and tests.

mod analytic;
pub mod catalog;
mod heightfield;
mod parametric;
pub mod pgm;

pub use analytic::{AnalyticCurve, AnalyticSurface, CurveFn, SurfaceFn, SurfaceGradFn, SurfaceHessFn};
pub use catalog::{builtin, builtin_curve, builtin_surface, Builtin, CatalogEntry, EntryKind, CATALOG};
pub use heightfield::HeightField;
pub use parametric::{ParametricKind, ParametricSurface};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Closed axis-aligned rectangle `[x_lo, x_hi] × [y_lo, y_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Rect<T> {
    pub x_lo: T,
    pub x_hi: T,
    pub y_lo: T,
    pub y_hi: T,
}

impl<T: Real> Rect<T> {
    pub fn new(x_lo: T, x_hi: T, y_lo: T, y_hi: T) -> Result<Self> {
        if !(x_lo.is_finite() && x_hi.is_finite() && y_lo.is_finite() && y_hi.is_finite()) {
            return Err(Error::NonFinite("domain bounds"));
        }
        if !(x_lo < x_hi && y_lo < y_hi) {
            return Err(Error::param("domain", "bounds must satisfy lo < hi"));
        }
        Ok(Self { x_lo, x_hi, y_lo, y_hi })
    }

    pub fn square(half: T) -> Self {
        Self { x_lo: -half, x_hi: half, y_lo: -half, y_hi: half }
    }

    #[inline]
    pub fn contains(&self, x: T, y: T) -> bool {
        x >= self.x_lo && x <= self.x_hi && y >= self.y_lo && y <= self.y_hi
    }

    pub fn width(&self) -> T {
        self.x_hi - self.x_lo
    }

    pub fn height(&self) -> T {
        self.y_hi - self.y_lo
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::NonFinite("interval bounds"));
        }
        if !(lo < hi) {
            return Err(Error::param("domain", "bounds must satisfy lo < hi"));
        }
        Ok(Self { lo, hi })
    }

    #[inline]
    pub fn contains(&self, x: T) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn span(&self) -> T {
        self.hi - self.lo
    }
}

/// Symmetric 2×2 Hessian `[[f_xx, f_xy], [f_xy, f_yy]]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Hessian<T> {
    pub fxx: T,
    pub fxy: T,
    pub fyx: T,
    pub fyy: T,
}

impl<T: Real> Hessian<T> {
    pub fn symmetric(fxx: T, fxy: T, fyy: T) -> Self {
        Self { fxx, fxy, fyx: fxy, fyy }
    }

    pub fn zero() -> Self {
        Self::symmetric(T::zero(), T::zero(), T::zero())
    }

    pub fn determinant(&self) -> T {
        self.fxx * self.fyy - self.fxy * self.fyx
    }

    /// `H · (dx, dy)`.
    pub fn apply(&self, dx: T, dy: T) -> (T, T) {
        (self.fxx * dx + self.fxy * dy, self.fyx * dx + self.fyy * dy)
    }
}

/// A graph surface `z = f(x, y)` over a rectangular domain.
///
/// Implementations must reject points outside [`Surface::domain`] with
/// [`Error::OutOfDomain`].
pub trait Surface<T: Real> {
    fn domain(&self) -> Rect<T>;

    fn height(&self, x: T, y: T) -> Result<T>;

    /// `(p, q) = (∂f/∂x, ∂f/∂y)`.
    fn gradient(&self, x: T, y: T) -> Result<(T, T)>;

    fn hessian(&self, x: T, y: T) -> Result<Hessian<T>>;

    fn check_domain(&self, x: T, y: T) -> Result<()> {
        if self.domain().contains(x, y) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { x: x.to_f64_lossy(), y: y.to_f64_lossy() })
        }
    }
}

impl<T: Real, S: Surface<T> + ?Sized> Surface<T> for &S {
    fn domain(&self) -> Rect<T> {
        (**self).domain()
    }
    fn height(&self, x: T, y: T) -> Result<T> {
        (**self).height(x, y)
    }
    fn gradient(&self, x: T, y: T) -> Result<(T, T)> {
        (**self).gradient(x, y)
    }
    fn hessian(&self, x: T, y: T) -> Result<Hessian<T>> {
        (**self).hessian(x, y)
    }
}

/// Gradient at `(x, y)`: exact for analytic surfaces, interpolated central
/// differences for heightfields.
pub fn gradient_at<T: Real, S: Surface<T> + ?Sized>(surface: &S, x: T, y: T) -> Result<(T, T)> {
    surface.gradient(x, y)
}

/// Gaussian curvature of a graph surface:
/// `K = (f_xx·f_yy − f_xy²) / (1 + p² + q²)²`.
pub fn gaussian_curvature_at<T: Real, S: Surface<T> + ?Sized>(surface: &S, x: T, y: T) -> Result<T> {
    let (p, q) = surface.gradient(x, y)?;
    let h = surface.hessian(x, y)?;
    Ok(curvature_from_derivatives(p, q, &h))
}

pub(crate) fn curvature_from_derivatives<T: Real>(p: T, q: T, h: &Hessian<T>) -> T {
    let w = T::one() + p * p + q * q;
    (h.fxx * h.fyy - h.fxy * h.fyx) / (w * w)
}
