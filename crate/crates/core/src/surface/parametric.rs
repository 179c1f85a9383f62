use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParametricKind {
    /// `(R sin u cos v, R sin u sin v, −R cos u)`: the same bowl as the sphere graph patch.
    Sphere,
    /// Tractrix revolution: `r = a sech u`, `z = a (u − tanh u)`.
    Pseudosphere,
}

/// Parametric form of a constant-curvature surface with its exact upward unit normal.
#[derive(Debug, Clone, Copy)]
pub struct ParametricSurface<T> {
    pub kind: ParametricKind,
    pub radius: T,
}

impl<T: Real> ParametricSurface<T> {
    pub fn new(kind: ParametricKind, radius: T) -> Result<Self> {
        if !(radius.is_finite() && radius > T::zero()) {
            return Err(Error::param("radius", "must be finite and > 0"));
        }
        Ok(Self { kind, radius })
    }

    pub fn point(&self, u: T, v: T) -> [T; 3] {
        let r = self.radius;
        match self.kind {
            ParametricKind::Sphere => [r * u.sin() * v.cos(), r * u.sin() * v.sin(), -r * u.cos()],
            ParametricKind::Pseudosphere => {
                let rho = r / u.cosh();
                [rho * v.cos(), rho * v.sin(), r * (u - u.tanh())]
            }
        }
    }

    /// Unit normal with positive z component.
    pub fn normal(&self, u: T, v: T) -> [T; 3] {
        match self.kind {
            ParametricKind::Sphere => [-u.sin() * v.cos(), -u.sin() * v.sin(), u.cos()],
            ParametricKind::Pseudosphere => {
                let t = u.tanh();
                [t * v.cos(), t * v.sin(), T::one() / u.cosh()]
            }
        }
    }

    /// Constant Gaussian curvature: `1/R²` or `−1/a²`.
    pub fn gaussian_curvature(&self) -> T {
        let k = T::one() / (self.radius * self.radius);
        match self.kind {
            ParametricKind::Sphere => k,
            ParametricKind::Pseudosphere => -k,
        }
    }
}
