use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use super::{approximate, max_abs_curvature, BoundaryApprox, Method};
use crate::error::{Error, Result};
use crate::geometry::hausdorff;
use crate::ortho::{surface_region, OrthoParams, OrthoRegion, RegionOptions};
use crate::scalar::Real;
use crate::surface::Surface;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxComparison<T> {
    pub method: Method,
    pub method_tag: &'static str,
    pub iou: T,
    /// Rasterized approximation area over exact region area.
    pub area_ratio: T,
    /// Symmetric Hausdorff distance between the two outlines (world units).
    pub hausdorff: T,
    /// Median wall-clock build time over the configured repeats, in seconds.
    pub build_time: f64,
    pub approx: BoundaryApprox<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareConfig<T> {
    pub n_directions: usize,
    pub m_ratio: T,
    /// Precomputed maximum |K|; sampled over the domain at `(dx, dy)` when absent.
    pub k_max: Option<T>,
    pub repeats: usize,
    /// Points used to sample curved outlines for the Hausdorff distance.
    pub outline_samples: usize,
}

impl<T: Real> Default for CompareConfig<T> {
    fn default() -> Self {
        Self { n_directions: 16, m_ratio: T::lit(4.0), k_max: None, repeats: 5, outline_samples: 720 }
    }
}

/// Lattice cells (offsets from the region center) covered by a shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    pub cells: BTreeSet<(i64, i64)>,
}

/// Rasterizes an approximation onto the lattice `center + (i·dx, j·dy)`.
pub fn rasterize<T: Real>(approx: &BoundaryApprox<T>, center: [T; 2], params: &OrthoParams<T>) -> Raster {
    let (lo_x, hi_x, lo_y, hi_y) = approx.shape.bbox();
    let pad = T::one();
    let i_lo = ((lo_x - center[0]) / params.dx - pad).floor().to_i64().unwrap_or(0);
    let i_hi = ((hi_x - center[0]) / params.dx + pad).ceil().to_i64().unwrap_or(0);
    let j_lo = ((lo_y - center[1]) / params.dy - pad).floor().to_i64().unwrap_or(0);
    let j_hi = ((hi_y - center[1]) / params.dy + pad).ceil().to_i64().unwrap_or(0);
    let mut cells = BTreeSet::new();
    for j in j_lo..=j_hi {
        let y = center[1] + T::from_i64_lossy(j) * params.dy;
        for i in i_lo..=i_hi {
            let x = center[0] + T::from_i64_lossy(i) * params.dx;
            if approx.shape.contains([x, y]) {
                cells.insert((i, j));
            }
        }
    }
    Raster { cells }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

fn score<T: Real>(
    region: &OrthoRegion<T>,
    exact: &BTreeSet<(i64, i64)>,
    approx: BoundaryApprox<T>,
    build_time: f64,
    cfg: &CompareConfig<T>,
) -> ApproxComparison<T> {
    let center = [region.center[0], region.center[1]];
    let raster = rasterize(&approx, center, &region.params);
    let inter = raster.cells.intersection(exact).count();
    let union = exact.len() + raster.cells.len() - inter;
    let to_t = |n: usize| T::from_usize(n).unwrap();
    let iou = if union == 0 { T::zero() } else { to_t(inter) / to_t(union) };
    let area_ratio = to_t(raster.cells.len()) / to_t(exact.len());
    let outline = approx.shape.outline(cfg.outline_samples);
    ApproxComparison {
        method: approx.method,
        method_tag: approx.method_tag,
        iou,
        area_ratio,
        hausdorff: hausdorff(&region.boundary, &outline),
        build_time,
        approx,
    }
}

/// Builds each requested approximation at `(x0, y0)` and scores it against
/// the exact ε-orthographic region (IoU, area ratio, Hausdorff distance and
/// median build time).
pub fn compare<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x0: T,
    y0: T,
    params: &OrthoParams<T>,
    methods: &[Method],
    cfg: &CompareConfig<T>,
) -> Result<(OrthoRegion<T>, Vec<ApproxComparison<T>>)> {
    if cfg.repeats == 0 {
        return Err(Error::param("repeats", "must be >= 1"));
    }
    let region = surface_region(surface, x0, y0, params, &RegionOptions::default())?;
    if region.len() < 2 {
        return Err(Error::DegenerateRegion("exact region holds only its center".into()));
    }
    compare_with_region(surface, &region, methods, cfg)
}

/// Same as [`compare`] with an already computed exact region.
pub fn compare_with_region<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    region: &OrthoRegion<T>,
    methods: &[Method],
    cfg: &CompareConfig<T>,
) -> Result<(OrthoRegion<T>, Vec<ApproxComparison<T>>)> {
    let params = region.params;
    let (x0, y0) = (region.center[0], region.center[1]);
    let k_max = match cfg.k_max {
        Some(k) => k,
        None if methods.contains(&Method::CircularTwo) => max_abs_curvature(surface, params.dx, params.dy)?,
        None => T::zero(),
    };
    let exact = region.offsets();
    let mut out = Vec::with_capacity(methods.len());
    for &method in methods {
        let mut times = Vec::with_capacity(cfg.repeats);
        let mut built = None;
        for _ in 0..cfg.repeats {
            let t = Instant::now();
            let a = approximate(surface, x0, y0, method, &params, cfg.n_directions, cfg.m_ratio, k_max)?;
            times.push(t.elapsed().as_secs_f64());
            built = Some(a);
        }
        out.push(score(region, &exact, built.expect("repeats >= 1"), median(times), cfg));
    }
    Ok((region.clone(), out))
}
