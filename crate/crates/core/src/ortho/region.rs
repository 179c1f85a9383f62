use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{phi_surface, theta_surface, GradientMode, OrthoParams};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::surface::{Hessian, Surface};

/// All integer pairs with `|n1| + |n2| = n`, counter-clockwise from `(n, 0)`.
pub fn pair_gen(n: i64) -> Result<Vec<(i64, i64)>> {
    if n < 0 {
        return Err(Error::param("n", "ring index must be >= 0"));
    }
    if n == 0 {
        return Ok(vec![(0, 0)]);
    }
    let mut ring = Vec::with_capacity(4 * n as usize);
    ring.extend((0..n).map(|k| (n - k, k)));
    ring.extend((0..n).map(|k| (-k, n - k)));
    ring.extend((0..n).map(|k| (-(n - k), -k)));
    ring.extend((0..n).map(|k| (k, -(n - k))));
    Ok(ring)
}

/// Knobs for region growing beyond the orthographic parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionOptions {
    /// Keep only the 8-connected component containing the center.
    pub connectivity_filter: bool,
    /// Growing stops once the count of empty rings exceeds this.
    pub empty_ring_limit: u32,
    /// Reset the empty-ring count whenever a ring accepts a point.
    pub reset_on_accept: bool,
    pub gradient_mode: GradientMode,
}

impl Default for RegionOptions {
    fn default() -> Self {
        Self {
            connectivity_filter: false,
            empty_ring_limit: 3,
            reset_on_accept: false,
            gradient_mode: GradientMode::Exact,
        }
    }
}

impl RegionOptions {
    pub fn with_connectivity(connectivity_filter: bool) -> Self {
        Self { connectivity_filter, ..Self::default() }
    }
}

/// Accepted probe point: lattice offset from the center and world position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Member<T> {
    pub offset: (i64, i64),
    pub x: T,
    pub y: T,
    pub z: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthoRegion<T> {
    pub center: [T; 3],
    pub members: Vec<Member<T>>,
    /// Closed outline (first vertex not repeated), counter-clockwise.
    pub boundary: Vec<[T; 2]>,
    pub params: OrthoParams<T>,
    pub connectivity_filtered: bool,
}

impl<T: Real> OrthoRegion<T> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn offsets(&self) -> BTreeSet<(i64, i64)> {
        self.members.iter().map(|m| m.offset).collect()
    }

    pub fn cell_area(&self) -> T {
        self.params.dx * self.params.dy
    }

    /// Member count times cell area.
    pub fn area(&self) -> T {
        T::from_usize(self.members.len()).unwrap() * self.cell_area()
    }

    pub fn contains_offset(&self, offset: (i64, i64)) -> bool {
        self.members.iter().any(|m| m.offset == offset)
    }
}

/// θ/φ acceptance test against a fixed center.
pub(crate) struct Acceptor<'a, T, S: ?Sized> {
    surface: &'a S,
    x0: T,
    y0: T,
    p0: T,
    q0: T,
    hessian0: Hessian<T>,
    params: OrthoParams<T>,
    mode: GradientMode,
}

impl<'a, T: Real, S: Surface<T> + ?Sized> Acceptor<'a, T, S> {
    pub(crate) fn new(surface: &'a S, x0: T, y0: T, params: &OrthoParams<T>, mode: GradientMode) -> Result<Self> {
        surface.check_domain(x0, y0)?;
        let (p0, q0) = surface.gradient(x0, y0)?;
        let hessian0 = match mode {
            GradientMode::Exact => Hessian::zero(),
            GradientMode::FirstOrder => surface.hessian(x0, y0)?,
        };
        Ok(Self { surface, x0, y0, p0, q0, hessian0, params: *params, mode })
    }

    /// `None` when the probe leaves the domain, otherwise whether it is accepted.
    pub(crate) fn test(&self, delta_x: T, delta_y: T) -> Result<Option<bool>> {
        let (x, y) = (self.x0 + delta_x, self.y0 + delta_y);
        if !self.surface.domain().contains(x, y) {
            return Ok(None);
        }
        if theta_surface(delta_x, delta_y, self.params.d)? > self.params.epsilon {
            return Ok(Some(false));
        }
        let (p, q) = match self.mode {
            GradientMode::Exact => self.surface.gradient(x, y)?,
            GradientMode::FirstOrder => {
                let (dp, dq) = self.hessian0.apply(delta_x, delta_y);
                (self.p0 + dp, self.q0 + dq)
            }
        };
        Ok(Some(phi_surface(self.p0, self.q0, p, q) <= self.params.epsilon))
    }

    pub(crate) fn lattice_delta(&self, offset: (i64, i64)) -> (T, T) {
        (T::from_i64_lossy(offset.0) * self.params.dx, T::from_i64_lossy(offset.1) * self.params.dy)
    }

    fn member(&self, offset: (i64, i64)) -> Result<Member<T>> {
        let (dx, dy) = self.lattice_delta(offset);
        let (x, y) = (self.x0 + dx, self.y0 + dy);
        Ok(Member { offset, x, y, z: self.surface.height(x, y)? })
    }
}

fn finish<T: Real, S: Surface<T> + ?Sized>(
    acc: &Acceptor<'_, T, S>,
    mut offsets: Vec<(i64, i64)>,
    connectivity_filter: bool,
) -> Result<OrthoRegion<T>> {
    if connectivity_filter {
        let keep = connected_component(&offsets);
        offsets.retain(|o| keep.contains(o));
    }
    let members = offsets.iter().map(|&o| acc.member(o)).collect::<Result<Vec<_>>>()?;
    let z0 = acc.surface.height(acc.x0, acc.y0)?;
    let mut region = OrthoRegion {
        center: [acc.x0, acc.y0, z0],
        members,
        boundary: Vec::new(),
        params: acc.params,
        connectivity_filtered: connectivity_filter,
    };
    region.boundary = super::region_boundary(&region)?;
    Ok(region)
}

/// Grows the ε-orthographic region around `(x0, y0)` ring by ring.
///
/// Ring `n` holds the lattice offsets with L1 norm `n`. Growing stops when a
/// ring lies entirely outside the domain, when the empty-ring count exceeds
/// `options.empty_ring_limit`, or past the last ring that can still satisfy
/// `θ ≤ ε`.
pub fn surface_region<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x0: T,
    y0: T,
    params: &OrthoParams<T>,
    options: &RegionOptions,
) -> Result<OrthoRegion<T>> {
    let acc = Acceptor::new(surface, x0, y0, params, options.gradient_mode)?;
    let radius = params.fov_radius();
    let last_ring =
        (radius / params.dx).floor().to_i64().unwrap_or(0) + (radius / params.dy).floor().to_i64().unwrap_or(0) + 1;

    let mut offsets = vec![(0, 0)];
    let mut empty_rings = 0u32;
    for n in 1..=last_ring {
        let mut accepted = 0usize;
        let mut inside = false;
        for offset in pair_gen(n)? {
            let (dx, dy) = acc.lattice_delta(offset);
            match acc.test(dx, dy)? {
                None => {}
                Some(ok) => {
                    inside = true;
                    if ok {
                        offsets.push(offset);
                        accepted += 1;
                    }
                }
            }
        }
        if !inside {
            break;
        }
        if accepted == 0 {
            empty_rings += 1;
        } else if options.reset_on_accept {
            empty_rings = 0;
        }
        if empty_rings > options.empty_ring_limit {
            break;
        }
    }
    finish(&acc, offsets, options.connectivity_filter)
}

/// Reference region: tests every lattice point within L∞ distance
/// `d·tan ε + 2·max(dx, dy)` of the center, with no ring logic.
pub fn brute_force_region<T: Real, S: Surface<T> + ?Sized>(
    surface: &S,
    x0: T,
    y0: T,
    params: &OrthoParams<T>,
    options: &RegionOptions,
) -> Result<OrthoRegion<T>> {
    let acc = Acceptor::new(surface, x0, y0, params, options.gradient_mode)?;
    let reach = params.fov_radius() + T::two() * params.dx.max(params.dy);
    let ni = (reach / params.dx).floor().to_i64().unwrap_or(0);
    let nj = (reach / params.dy).floor().to_i64().unwrap_or(0);
    let mut offsets = Vec::new();
    for j in -nj..=nj {
        for i in -ni..=ni {
            let (dx, dy) = acc.lattice_delta((i, j));
            if acc.test(dx, dy)? == Some(true) {
                offsets.push((i, j));
            }
        }
    }
    finish(&acc, offsets, options.connectivity_filter)
}

/// 8-connected component of `offsets` containing `(0, 0)`.
fn connected_component(offsets: &[(i64, i64)]) -> HashSet<(i64, i64)> {
    let all: HashSet<(i64, i64)> = offsets.iter().copied().collect();
    let mut seen = HashSet::new();
    if !all.contains(&(0, 0)) {
        return seen;
    }
    let mut stack = vec![(0, 0)];
    seen.insert((0, 0));
    while let Some((i, j)) = stack.pop() {
        for di in -1..=1 {
            for dj in -1..=1 {
                let n = (i + di, j + dj);
                if all.contains(&n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
    }
    seen
}
