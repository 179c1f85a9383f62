//! Regular-shape approximations of ε-orthographic boundaries.
//!
//! Approaches 1–3 march `N` equiangular rays from the center and build a
//! polygon, an ellipse, or a mean-radius circle from the ray endpoints.
//! Approach 4 skips marching entirely and shrinks the plane radius
//! `d·tan ε` linearly with the absolute Gaussian curvature at the center.

mod compare;

pub use compare::{compare, compare_with_region, rasterize, ApproxComparison, CompareConfig, Raster};

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ortho::Acceptor;
use crate::ortho::{OrthoParams, RegionOptions};
use crate::scalar::Real;
use crate::surface::{gaussian_curvature_at, Surface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Polygonal,
    Elliptical,
    CircularOne,
    CircularTwo,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Polygonal, Method::Elliptical, Method::CircularOne, Method::CircularTwo];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Polygonal => "approach-1",
            Method::Elliptical => "approach-2",
            Method::CircularOne => "approach-3",
            Method::CircularTwo => "approach-4",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Polygonal => "polygonal",
            Method::Elliptical => "elliptical",
            Method::CircularOne => "circular-i",
            Method::CircularTwo => "circular-ii",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s || m.tag() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirectionalBound<T> {
    pub direction_index: usize,
    pub angle: T,
    pub endpoint: [T; 2],
    pub distance_from_center: T,
    /// Number of accepted steps along the ray.
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ApproxShape<T> {
    Polygon { vertices: Vec<[T; 2]> },
    Ellipse { center: [T; 2], semi_major: T, semi_minor: T, orientation: T },
    Circle { center: [T; 2], radius: T },
}

impl<T: Real> ApproxShape<T> {
    pub fn contains(&self, pt: [T; 2]) -> bool {
        let slack = T::lit(1e-9);
        match self {
            ApproxShape::Polygon { vertices } => {
                let scale = vertices.iter().fold(T::zero(), |m, v| m.max(v[0].abs()).max(v[1].abs())).max(T::one());
                crate::geometry::point_in_or_on_polygon(pt, vertices, slack * scale)
            }
            ApproxShape::Ellipse { center, semi_major, semi_minor, orientation } => {
                let (s, c) = orientation.sin_cos();
                let (dx, dy) = (pt[0] - center[0], pt[1] - center[1]);
                let u = (dx * c + dy * s) / *semi_major;
                let v = (-dx * s + dy * c) / *semi_minor;
                u * u + v * v <= T::one() + slack
            }
            ApproxShape::Circle { center, radius } => {
                let r = (pt[0] - center[0]).hypot(pt[1] - center[1]);
                r <= *radius * (T::one() + slack)
            }
        }
    }

    /// Closed outline; curved shapes are sampled at `samples` points.
    pub fn outline(&self, samples: usize) -> Vec<[T; 2]> {
        let ring = |center: [T; 2], a: T, b: T, rot: T| -> Vec<[T; 2]> {
            let (s, c) = rot.sin_cos();
            (0..samples)
                .map(|k| {
                    let t = T::TAU() * T::from_usize(k).unwrap() / T::from_usize(samples).unwrap();
                    let (u, v) = (a * t.cos(), b * t.sin());
                    [center[0] + u * c - v * s, center[1] + u * s + v * c]
                })
                .collect()
        };
        match self {
            ApproxShape::Polygon { vertices } => vertices.clone(),
            ApproxShape::Ellipse { center, semi_major, semi_minor, orientation } => {
                ring(*center, *semi_major, *semi_minor, *orientation)
            }
            ApproxShape::Circle { center, radius } => ring(*center, *radius, *radius, T::zero()),
        }
    }

    /// Axis-aligned bounding box `(x_lo, x_hi, y_lo, y_hi)`.
    pub fn bbox(&self) -> (T, T, T, T) {
        match self {
            ApproxShape::Polygon { vertices } => vertices
                .iter()
                .fold((T::infinity(), T::neg_infinity(), T::infinity(), T::neg_infinity()), |(a, b, c, d), v| {
                    (a.min(v[0]), b.max(v[0]), c.min(v[1]), d.max(v[1]))
                }),
            ApproxShape::Ellipse { center, semi_major, semi_minor, orientation } => {
                let (s, c) = orientation.sin_cos();
                let (a, b) = (*semi_major, *semi_minor);
                let hx = (a * a * c * c + b * b * s * s).sqrt();
                let hy = (a * a * s * s + b * b * c * c).sqrt();
                (center[0] - hx, center[0] + hx, center[1] - hy, center[1] + hy)
            }
            ApproxShape::Circle { center, radius } => {
                (center[0] - *radius, center[0] + *radius, center[1] - *radius, center[1] + *radius)
            }
        }
    }

    pub fn area(&self) -> T {
        match self {
            ApproxShape::Polygon { vertices } => crate::geometry::polygon_area(vertices).abs(),
            ApproxShape::Ellipse { semi_major, semi_minor, .. } => T::PI() * *semi_major * *semi_minor,
            ApproxShape::Circle { radius, .. } => T::PI() * *radius * *radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryApprox<T> {
    pub method: Method,
    pub method_tag: &'static str,
    #[serde(flatten)]
    pub shape: ApproxShape<T>,
    /// Ray endpoints used to build the shape (empty for circular-II).
    pub rays: Vec<DirectionalBound<T>>,
    /// Wall-clock seconds spent building the approximation.
    pub build_time: f64,
    pub note: Option<String>,
}

impl<T> BoundaryApprox<T> {
    fn new(method: Method, shape: ApproxShape<T>, rays: Vec<DirectionalBound<T>>, started: Instant) -> Self {
        Self { method, method_tag: method.tag(), shape, rays, build_time: started.elapsed().as_secs_f64(), note: None }
    }
}

fn ray<T: Real, S: Surface<T> + ?Sized>(
    acc: &Acceptor<'_, T, S>,
    x0: T,
    y0: T,
    index: usize,
    angle: T,
    params: &OrthoParams<T>,
) -> Result<DirectionalBound<T>> {
    let (sin, cos) = angle.sin_cos();
    let (ux, uy) = (params.dx * cos, params.dy * sin);
    let mut steps = 0usize;
    loop {
        let k = T::from_usize(steps + 1).unwrap();
        match acc.test(k * ux, k * uy)? {
            Some(true) => steps += 1,
            _ => break,
        }
    }
    let k = T::from_usize(steps).unwrap();
    let (ex, ey) = (k * ux, k * uy);
    Ok(DirectionalBound {
        direction_index: index,
        angle,
        endpoint: [x0 + ex, y0 + ey],
        distance_from_center: ex.hypot(ey),
        steps,
    })
}

/// Marches from the center along `angle` in steps of `(dx·cos, dy·sin)` and
/// returns the last point passing both θ and φ tests.
pub fn ray_bound<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x0: T,
    y0: T,
    angle: T,
    params: &OrthoParams<T>,
) -> Result<DirectionalBound<T>> {
    let acc = Acceptor::new(surface, x0, y0, params, RegionOptions::default().gradient_mode)?;
    ray(&acc, x0, y0, 0, angle, params)
}

/// Ray bounds at angles `2πk/N`, `k = 0..N`.
pub fn ray_bounds<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x0: T,
    y0: T,
    n: usize,
    params: &OrthoParams<T>,
) -> Result<Vec<DirectionalBound<T>>> {
    let acc = Acceptor::new(surface, x0, y0, params, RegionOptions::default().gradient_mode)?;
    let rays = (0..n)
        .map(|k| {
            let angle = T::TAU() * T::from_usize(k).unwrap() / T::from_usize(n).unwrap();
            ray(&acc, x0, y0, k, angle, params)
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(r) = rays.iter().find(|r| r.steps == 0) {
        return Err(Error::DegenerateRegion(format!(
            "ray {} (angle {:.4} rad) is rejected at its first step",
            r.direction_index,
            r.angle.to_f64_lossy()
        )));
    }
    Ok(rays)
}

fn check_directions(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::param("n_directions", format!("must be >= {min}")));
    }
    Ok(())
}

/// Approach 1: the N ray endpoints joined in angular order.
pub fn approx_polygonal<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x0: T,
    y0: T,
    n: usize,
    params: &OrthoParams<T>,
) -> Result<BoundaryApprox<T>> {
    check_directions(n, 3)?;
    let started = Instant::now();
    let rays = ray_bounds(surface, x0, y0, n, params)?;
    let vertices = rays.iter().map(|r| r.endpoint).collect();
    Ok(BoundaryApprox::new(Method::Polygonal, ApproxShape::Polygon { vertices }, rays, started))
}

/// Approach 2: ellipse whose major axis is the longest of the N/2 diagonals
/// joining opposite ray endpoints and whose minor axis has the length of the
/// shortest one. The ellipse is centered on the midpoint of the longest diagonal.
pub fn approx_elliptical<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x0: T,
    y0: T,
    n: usize,
    params: &OrthoParams<T>,
) -> Result<BoundaryApprox<T>> {
    check_directions(n, 4)?;
    if !n.is_multiple_of(2) {
        return Err(Error::param("n_directions", "elliptical approximation needs an even number of directions"));
    }
    let started = Instant::now();
    let rays = ray_bounds(surface, x0, y0, n, params)?;
    let half = n / 2;
    let diagonals: Vec<([T; 2], [T; 2], T)> = (0..half)
        .map(|k| {
            let (a, b) = (rays[k].endpoint, rays[k + half].endpoint);
            (a, b, (b[0] - a[0]).hypot(b[1] - a[1]))
        })
        .collect();
    let (a, b, longest) = diagonals.iter().copied().fold(diagonals[0], |best, d| if d.2 > best.2 { d } else { best });
    let shortest = diagonals.iter().fold(T::infinity(), |m, d| m.min(d.2));
    let shape = ApproxShape::Ellipse {
        center: [(a[0] + b[0]) * T::half(), (a[1] + b[1]) * T::half()],
        semi_major: longest * T::half(),
        semi_minor: shortest * T::half(),
        orientation: (b[1] - a[1]).atan2(b[0] - a[0]),
    };
    Ok(BoundaryApprox::new(Method::Elliptical, shape, rays, started))
}

/// Approach 3: circle at the center with the mean ray length as radius.
pub fn approx_circular_one<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x0: T,
    y0: T,
    n: usize,
    params: &OrthoParams<T>,
) -> Result<BoundaryApprox<T>> {
    check_directions(n, 3)?;
    let started = Instant::now();
    let rays = ray_bounds(surface, x0, y0, n, params)?;
    let total = rays.iter().fold(T::zero(), |s, r| s + r.distance_from_center);
    let radius = total / T::from_usize(n).unwrap();
    Ok(BoundaryApprox::new(Method::CircularOne, ApproxShape::Circle { center: [x0, y0], radius }, rays, started))
}

/// Approach 4 radius: `R − (|K|/K_max)·R·(1 − 1/m)` with `R = d·tan ε`.
///
/// `|K|` above `K_max` is clamped so the radius never drops below `R/m`.
pub fn curvature_radius<T: Real>(abs_k: T, k_max: T, m: T, plane_radius: T) -> T {
    if !(k_max > T::zero()) {
        return plane_radius;
    }
    let ratio = (abs_k / k_max).min(T::one());
    plane_radius - ratio * plane_radius * (T::one() - T::one() / m)
}

/// Maximum absolute Gaussian curvature over the surface domain, sampled on a
/// lattice of spacing `(dx, dy)` anchored at the domain's lower corner.
pub fn max_abs_curvature<T: Real, S: Surface<T> + ?Sized>(surface: &S, dx: T, dy: T) -> Result<T> {
    if !(dx > T::zero() && dy > T::zero()) {
        return Err(Error::param("spacing", "must be > 0"));
    }
    let dom = surface.domain();
    let nx = (dom.width() / dx).floor().to_usize().unwrap_or(0);
    let ny = (dom.height() / dy).floor().to_usize().unwrap_or(0);
    let mut best = T::zero();
    for j in 0..=ny {
        let y = dom.y_lo + T::from_usize(j).unwrap() * dy;
        for i in 0..=nx {
            let x = dom.x_lo + T::from_usize(i).unwrap() * dx;
            let k = gaussian_curvature_at(surface, x, y)?.abs();
            if k.is_finite() {
                best = best.max(k);
            }
        }
    }
    Ok(best)
}

/// Approach 4: circle at the center whose radius shrinks with `|K|`.
pub fn approx_circular_two<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x0: T,
    y0: T,
    m: T,
    params: &OrthoParams<T>,
    k_max: T,
) -> Result<BoundaryApprox<T>> {
    if !(m.is_finite() && m > T::one()) {
        return Err(Error::param("m_ratio", "must be finite and > 1"));
    }
    if !(k_max.is_finite() && k_max >= T::zero()) {
        return Err(Error::param("k_max", "must be finite and >= 0"));
    }
    let started = Instant::now();
    let k = gaussian_curvature_at(surface, x0, y0)?;
    let radius = curvature_radius(k.abs(), k_max, m, params.fov_radius());
    let mut approx =
        BoundaryApprox::new(Method::CircularTwo, ApproxShape::Circle { center: [x0, y0], radius }, vec![], started);
    if k_max == T::zero() {
        approx.note = Some("K_max is zero (flat surface); radius equals d·tan ε".into());
    }
    Ok(approx)
}

/// Builds one approximation by method.
#[allow(clippy::too_many_arguments)]
pub fn approximate<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x0: T,
    y0: T,
    method: Method,
    params: &OrthoParams<T>,
    n: usize,
    m: T,
    k_max: T,
) -> Result<BoundaryApprox<T>> {
    match method {
        Method::Polygonal => approx_polygonal(surface, x0, y0, n, params),
        Method::Elliptical => approx_elliptical(surface, x0, y0, n, params),
        Method::CircularOne => approx_circular_one(surface, x0, y0, n, params),
        Method::CircularTwo => approx_circular_two(surface, x0, y0, m, params, k_max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{catalog, Rect};
    use std::f64::consts::PI;

    fn plane() -> crate::surface::AnalyticSurface<f64> {
        catalog::plane(0.0, 0.0, 0.0, Rect::square(5.0))
    }

    fn params() -> OrthoParams<f64> {
        OrthoParams::from_degrees(10.0, 2.0, 0.01, 0.01).unwrap()
    }

    #[test]
    fn plane_ray_reaches_fov_radius() {
        let p = params();
        for angle in [0.0, 0.3, PI / 2.0, 2.0] {
            let r = ray_bound(&plane(), 0.0, 0.0, angle, &p).unwrap();
            assert!((r.distance_from_center - p.fov_radius()).abs() <= p.dx, "{angle}: {r:?}");
        }
    }

    #[test]
    fn plane_octagon_area() {
        let p = params();
        let a = approx_polygonal(&plane(), 0.0, 0.0, 8, &p).unwrap();
        let ApproxShape::Polygon { vertices } = &a.shape else { panic!() };
        assert_eq!(vertices.len(), 8);
        let r = a.rays[0].distance_from_center;
        let expect = 0.5 * 8.0 * r * r * (2.0 * PI / 8.0).sin();
        assert!((a.shape.area() - expect).abs() / expect < 0.01);
        let circle = PI * p.fov_radius().powi(2);
        assert!((a.shape.area() / circle - 0.9003).abs() < 0.06);
        for (k, ray) in a.rays.iter().enumerate() {
            assert!((ray.angle - k as f64 * PI / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn plane_triangle_is_equilateral() {
        let a = approx_polygonal(&plane(), 0.0, 0.0, 3, &params()).unwrap();
        let ApproxShape::Polygon { vertices } = &a.shape else { panic!() };
        let side = |i: usize, j: usize| (vertices[i][0] - vertices[j][0]).hypot(vertices[i][1] - vertices[j][1]);
        let (s0, s1, s2) = (side(0, 1), side(1, 2), side(2, 0));
        assert!((s0 - s1).abs() < 0.02 * s0 && (s1 - s2).abs() < 0.02 * s0);
        assert!(approx_polygonal(&plane(), 0.0, 0.0, 2, &params()).is_err());
    }

    #[test]
    fn plane_ellipse_is_a_circle() {
        let a = approx_elliptical(&plane(), 0.0, 0.0, 8, &params()).unwrap();
        let ApproxShape::Ellipse { semi_major, semi_minor, .. } = a.shape else { panic!() };
        assert!(semi_major / semi_minor <= 1.05);
        assert!((semi_major - params().fov_radius()).abs() <= 0.02);
        assert!(approx_elliptical(&plane(), 0.0, 0.0, 7, &params()).is_err());
    }

    #[test]
    fn ellipse_center_moves_on_anisotropic_points() {
        let s = catalog::cos2_plus_cos2(Rect::square(5.0));
        let a = approx_elliptical(&s, 0.3, -0.9, 8, &params()).unwrap();
        let ApproxShape::Ellipse { center, semi_major, semi_minor, .. } = a.shape else { panic!() };
        assert!(semi_major >= semi_minor && semi_minor > 0.0);
        assert!((center[0] - 0.3).abs() + (center[1] + 0.9).abs() > 1e-6);
    }

    #[test]
    fn circular_one_on_plane() {
        let p = params();
        let a = approx_circular_one(&plane(), 0.0, 0.0, 12, &p).unwrap();
        let ApproxShape::Circle { radius, center } = a.shape else { panic!() };
        assert_eq!(center, [0.0, 0.0]);
        assert!((radius - p.fov_radius()).abs() <= p.dx);
    }

    #[test]
    fn curvature_radius_endpoints() {
        let r = 0.35f64;
        assert_eq!(curvature_radius(0.0, 4.0, 2.0, r), r);
        assert!((curvature_radius(4.0, 4.0, 2.0, r) - r / 2.0).abs() < 1e-15);
        assert!((curvature_radius(2.0, 4.0, 2.0, r) - 0.75 * r).abs() < 1e-15);
        assert_eq!(curvature_radius(1.0, 0.0, 2.0, r), r);
    }

    #[test]
    fn circular_two_on_plane_keeps_full_radius() {
        let p = params();
        let k_max = max_abs_curvature(&plane(), 0.1, 0.1).unwrap();
        assert_eq!(k_max, 0.0);
        let a = approx_circular_two(&plane(), 1.0, 1.0, 2.0, &p, k_max).unwrap();
        assert_eq!(a.shape, ApproxShape::Circle { center: [1.0, 1.0], radius: p.fov_radius() });
        assert!(a.note.is_some());
        assert!(a.rays.is_empty());
        assert!(approx_circular_two(&plane(), 1.0, 1.0, 1.0, &p, k_max).is_err());
    }

    #[test]
    fn degenerate_region_is_reported() {
        // φ fails immediately when ε is tiny relative to curvature·step
        let s = catalog::cos2_plus_cos2(Rect::square(5.0));
        let p = OrthoParams::new(1e-4, 2.0, 0.01, 0.01).unwrap();
        assert!(matches!(approx_polygonal(&s, 0.0, 0.0, 8, &p), Err(Error::DegenerateRegion(_))));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(Method::parse(m.name()), Some(m));
            assert_eq!(Method::parse(m.tag()), Some(m));
        }
        assert_eq!(Method::parse("hexagonal"), None);
    }
}
