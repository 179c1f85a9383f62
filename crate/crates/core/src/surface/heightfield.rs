use std::fmt::Write as _;

use super::{Hessian, Rect, Surface};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Elevation grid sampled on a regular lattice.
///
/// Node `(i, j)` sits at world position `(x0 + i·dx, y0 + j·dy)`; `j = 0` is
/// the southern (minimal y) row. Images are stored top row first, so loaders
/// flip rows: image row 0 becomes `j = ny - 1`.
///
/// Between nodes, heights, gradients and Hessians are bilinearly interpolated
/// from their lattice values. Lattice gradients are central differences in the
/// interior and one-sided differences on the border; lattice Hessians are the
/// same differences applied to the gradient field.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightField<T> {
    nx: usize,
    ny: usize,
    dx: T,
    dy: T,
    x0: T,
    y0: T,
    elevation_scale: T,
    z: Vec<T>,
}

impl<T: Real> HeightField<T> {
    /// Builds a heightfield from row-major data with `j = 0` as the first row.
    pub fn new(nx: usize, ny: usize, spacing: (T, T), origin: (T, T), elevation_scale: T, z: Vec<T>) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::GridTooSmall { nx, ny });
        }
        if z.len() != nx * ny {
            return Err(Error::param("elevations", format!("expected {} values, got {}", nx * ny, z.len())));
        }
        let (dx, dy) = spacing;
        if !(dx.is_finite() && dy.is_finite() && dx > T::zero() && dy > T::zero()) {
            return Err(Error::param("spacing", "components must be finite and > 0"));
        }
        if !(origin.0.is_finite() && origin.1.is_finite()) {
            return Err(Error::NonFinite("origin"));
        }
        if !(elevation_scale.is_finite() && elevation_scale > T::zero()) {
            return Err(Error::InvalidScale(elevation_scale.to_f64_lossy()));
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("elevations"));
        }
        Ok(Self { nx, ny, dx, dy, x0: origin.0, y0: origin.1, elevation_scale, z })
    }

    /// Samples `f` on the lattice.
    pub fn from_fn(nx: usize, ny: usize, spacing: (T, T), origin: (T, T), f: impl Fn(T, T) -> T) -> Result<Self> {
        let mut z = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let x = origin.0 + T::from_usize(i).unwrap() * spacing.0;
                let y = origin.1 + T::from_usize(j).unwrap() * spacing.1;
                z.push(f(x, y));
            }
        }
        Self::new(nx, ny, spacing, origin, T::one(), z)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn spacing(&self) -> (T, T) {
        (self.dx, self.dy)
    }

    pub fn origin(&self) -> (T, T) {
        (self.x0, self.y0)
    }

    pub fn elevation_scale(&self) -> T {
        self.elevation_scale
    }

    /// Lattice values, row-major with `j = 0` (minimal y) first.
    pub fn elevations(&self) -> &[T] {
        &self.z
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.z[j * self.nx + i]
    }

    pub fn node_position(&self, i: usize, j: usize) -> (T, T) {
        (self.x0 + T::from_usize(i).unwrap() * self.dx, self.y0 + T::from_usize(j).unwrap() * self.dy)
    }

    pub fn min_max(&self) -> (T, T) {
        self.z.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    pub fn mean(&self) -> T {
        let sum = self.z.iter().fold(T::zero(), |acc, &v| acc + v);
        sum / T::from_usize(self.z.len()).unwrap()
    }

    /// Gaussian blur with standard deviation `sigma` (in cells), kernel truncated
    /// at `⌈3σ⌉` and replicate-padded edges. `sigma = 0` returns an exact copy.
    pub fn smooth(&self, sigma: T) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= T::zero()) {
            return Err(Error::param("sigma", "must be finite and >= 0"));
        }
        if sigma == T::zero() {
            return Ok(self.clone());
        }
        let kernel = gaussian_kernel(sigma);
        let radius = (kernel.len() / 2) as isize;
        let (nx, ny) = (self.nx as isize, self.ny as isize);

        let mut tmp = vec![T::zero(); self.z.len()];
        for j in 0..ny {
            for i in 0..nx {
                let mut acc = T::zero();
                for (k, &w) in kernel.iter().enumerate() {
                    let ii = (i + k as isize - radius).clamp(0, nx - 1);
                    acc = acc + w * self.z[(j * nx + ii) as usize];
                }
                tmp[(j * nx + i) as usize] = acc;
            }
        }
        let mut out = vec![T::zero(); self.z.len()];
        for j in 0..ny {
            for i in 0..nx {
                let mut acc = T::zero();
                for (k, &w) in kernel.iter().enumerate() {
                    let jj = (j + k as isize - radius).clamp(0, ny - 1);
                    acc = acc + w * tmp[(jj * nx + i) as usize];
                }
                out[(j * nx + i) as usize] = acc;
            }
        }
        Ok(Self { z: out, ..self.clone() })
    }

    fn lattice_gradient(&self, i: usize, j: usize) -> (T, T) {
        (diff(i, self.nx, self.dx, |k| self.at(k, j)), diff(j, self.ny, self.dy, |k| self.at(i, k)))
    }

    fn lattice_hessian(&self, i: usize, j: usize) -> Hessian<T> {
        let fxx = diff(i, self.nx, self.dx, |k| self.lattice_gradient(k, j).0);
        let fyy = diff(j, self.ny, self.dy, |k| self.lattice_gradient(i, k).1);
        let p_y = diff(j, self.ny, self.dy, |k| self.lattice_gradient(i, k).0);
        let q_x = diff(i, self.nx, self.dx, |k| self.lattice_gradient(k, j).1);
        Hessian::symmetric(fxx, (p_y + q_x) * T::half(), fyy)
    }

    /// Cell containing `(x, y)` and the fractional offsets within it.
    fn locate(&self, x: T, y: T) -> (usize, usize, T, T) {
        let fx = (x - self.x0) / self.dx;
        let fy = (y - self.y0) / self.dy;
        let i = fx.floor().to_usize().unwrap_or(0).min(self.nx - 2);
        let j = fy.floor().to_usize().unwrap_or(0).min(self.ny - 2);
        let tx = (fx - T::from_usize(i).unwrap()).max(T::zero()).min(T::one());
        let ty = (fy - T::from_usize(j).unwrap()).max(T::zero()).min(T::one());
        (i, j, tx, ty)
    }

    fn bilinear<V: Copy>(&self, x: T, y: T, node: impl Fn(usize, usize) -> V, lerp: impl Fn(V, V, T) -> V) -> V {
        let (i, j, tx, ty) = self.locate(x, y);
        let bottom = lerp(node(i, j), node(i + 1, j), tx);
        let top = lerp(node(i, j + 1), node(i + 1, j + 1), tx);
        lerp(bottom, top, ty)
    }

    /// CSV export: header `# nx ny dx dy x0 y0 scale`, then one line per image
    /// row, top (maximal y) row first.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# {} {} {} {} {} {} {}",
            self.nx, self.ny, self.dx, self.dy, self.x0, self.y0, self.elevation_scale
        )
        .unwrap();
        for j in (0..self.ny).rev() {
            let row: Vec<String> = (0..self.nx).map(|i| self.at(i, j).to_string()).collect();
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        out
    }
}

fn lerp<T: Real>(a: T, b: T, t: T) -> T {
    a + (b - a) * t
}

/// First difference of a lattice sequence at index `k`.
fn diff<T: Real>(k: usize, n: usize, h: T, f: impl Fn(usize) -> T) -> T {
    if k == 0 {
        (f(1) - f(0)) / h
    } else if k == n - 1 {
        (f(n - 1) - f(n - 2)) / h
    } else {
        (f(k + 1) - f(k - 1)) / (T::two() * h)
    }
}

/// Normalized 1-D Gaussian weights over `[-⌈3σ⌉, ⌈3σ⌉]`.
fn gaussian_kernel<T: Real>(sigma: T) -> Vec<T> {
    let radius = (T::lit(3.0) * sigma).ceil().to_usize().unwrap_or(0).max(1);
    let denom = T::two() * sigma * sigma;
    let weights: Vec<T> = (0..=2 * radius)
        .map(|k| {
            let d = T::from_usize(k).unwrap() - T::from_usize(radius).unwrap();
            (-(d * d) / denom).exp()
        })
        .collect();
    let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
    weights.into_iter().map(|w| w / total).collect()
}

impl<T: Real> Surface<T> for HeightField<T> {
    fn domain(&self) -> Rect<T> {
        let (x1, y1) = self.node_position(self.nx - 1, self.ny - 1);
        Rect { x_lo: self.x0, x_hi: x1, y_lo: self.y0, y_hi: y1 }
    }

    fn height(&self, x: T, y: T) -> Result<T> {
        self.check_domain(x, y)?;
        Ok(self.bilinear(x, y, |i, j| self.at(i, j), lerp))
    }

    fn gradient(&self, x: T, y: T) -> Result<(T, T)> {
        self.check_domain(x, y)?;
        Ok(self.bilinear(x, y, |i, j| self.lattice_gradient(i, j), |a, b, t| (lerp(a.0, b.0, t), lerp(a.1, b.1, t))))
    }

    fn hessian(&self, x: T, y: T) -> Result<Hessian<T>> {
        self.check_domain(x, y)?;
        Ok(self.bilinear(
            x,
            y,
            |i, j| self.lattice_hessian(i, j),
            |a, b, t| Hessian::symmetric(lerp(a.fxx, b.fxx, t), lerp(a.fxy, b.fxy, t), lerp(a.fyy, b.fyy, t)),
        ))
    }
}
