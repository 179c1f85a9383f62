use std::fmt;
use std::sync::Arc;

use super::{Hessian, Interval, Rect, Surface};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub type SurfaceFn<T> = Arc<dyn Fn(T, T) -> T + Send + Sync>;
pub type SurfaceGradFn<T> = Arc<dyn Fn(T, T) -> (T, T) + Send + Sync>;
pub type SurfaceHessFn<T> = Arc<dyn Fn(T, T) -> Hessian<T> + Send + Sync>;
pub type CurveFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Closed-form surface `z = f(x, y)` with exact first and second derivatives.
#[derive(Clone)]
pub struct AnalyticSurface<T> {
    name: String,
    domain: Rect<T>,
    eval: SurfaceFn<T>,
    grad: SurfaceGradFn<T>,
    hess: SurfaceHessFn<T>,
}

impl<T: Real> AnalyticSurface<T> {
    pub fn new(
        name: impl Into<String>,
        domain: Rect<T>,
        eval: impl Fn(T, T) -> T + Send + Sync + 'static,
        grad: impl Fn(T, T) -> (T, T) + Send + Sync + 'static,
        hess: impl Fn(T, T) -> Hessian<T> + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), domain, eval: Arc::new(eval), grad: Arc::new(grad), hess: Arc::new(hess) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Same surface restricted (or extended) to another rectangle.
    pub fn with_domain(mut self, domain: Rect<T>) -> Self {
        self.domain = domain;
        self
    }
}

impl<T: Real> Surface<T> for AnalyticSurface<T> {
    fn domain(&self) -> Rect<T> {
        self.domain
    }

    fn height(&self, x: T, y: T) -> Result<T> {
        self.check_domain(x, y)?;
        Ok((self.eval)(x, y))
    }

    fn gradient(&self, x: T, y: T) -> Result<(T, T)> {
        self.check_domain(x, y)?;
        Ok((self.grad)(x, y))
    }

    fn hessian(&self, x: T, y: T) -> Result<Hessian<T>> {
        self.check_domain(x, y)?;
        Ok((self.hess)(x, y))
    }
}

impl<T: fmt::Debug> fmt::Debug for AnalyticSurface<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticSurface")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

/// Closed-form curve `y = f(x)` with exact derivatives.
///
/// At a declared non-smooth point `deriv` and `deriv2` return the one-sided
/// value from the right.
#[derive(Clone)]
pub struct AnalyticCurve<T> {
    name: String,
    domain: Interval<T>,
    eval: CurveFn<T>,
    deriv: CurveFn<T>,
    deriv2: CurveFn<T>,
    nonsmooth_points: Vec<T>,
}

impl<T: Real> AnalyticCurve<T> {
    pub fn new(
        name: impl Into<String>,
        domain: Interval<T>,
        eval: impl Fn(T) -> T + Send + Sync + 'static,
        deriv: impl Fn(T) -> T + Send + Sync + 'static,
        deriv2: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            domain,
            eval: Arc::new(eval),
            deriv: Arc::new(deriv),
            deriv2: Arc::new(deriv2),
            nonsmooth_points: Vec::new(),
        }
    }

    pub fn with_nonsmooth_points(mut self, mut points: Vec<T>) -> Self {
        points.sort_by(|a, b| a.partial_cmp(b).expect("finite kink"));
        self.nonsmooth_points = points;
        self
    }

    pub fn with_domain(mut self, domain: Interval<T>) -> Self {
        self.domain = domain;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    pub fn smooth_everywhere(&self) -> bool {
        self.nonsmooth_points.is_empty()
    }

    pub fn nonsmooth_points(&self) -> &[T] {
        &self.nonsmooth_points
    }

    pub fn is_nonsmooth_at(&self, x: T) -> bool {
        self.nonsmooth_points.contains(&x)
    }

    fn check(&self, x: T) -> Result<()> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { x: x.to_f64_lossy(), y: f64::NAN })
        }
    }

    pub fn eval(&self, x: T) -> Result<T> {
        self.check(x)?;
        Ok((self.eval)(x))
    }

    pub fn deriv(&self, x: T) -> Result<T> {
        self.check(x)?;
        Ok((self.deriv)(x))
    }

    pub fn deriv2(&self, x: T) -> Result<T> {
        self.check(x)?;
        Ok((self.deriv2)(x))
    }

    /// Unchecked evaluation, for callers that already validated `x`.
    pub(crate) fn eval_raw(&self, x: T) -> T {
        (self.eval)(x)
    }

    pub(crate) fn deriv_raw(&self, x: T) -> T {
        (self.deriv)(x)
    }
}

impl<T: fmt::Debug> fmt::Debug for AnalyticCurve<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticCurve")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("nonsmooth_points", &self.nonsmooth_points)
            .finish_non_exhaustive()
    }
}
