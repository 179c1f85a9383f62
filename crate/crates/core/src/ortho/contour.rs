//! Outline extraction for region masks (marching squares at level 1/2).

use std::collections::{BTreeSet, HashMap};

use super::OrthoRegion;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense boolean mask over the bounding box of a set of lattice offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMask {
    pub i_min: i64,
    pub j_min: i64,
    pub width: usize,
    pub height: usize,
    cells: Vec<bool>,
}

impl RegionMask {
    pub fn from_offsets<'a>(offsets: impl IntoIterator<Item = &'a (i64, i64)>) -> Option<Self> {
        let set: BTreeSet<(i64, i64)> = offsets.into_iter().copied().collect();
        let i_min = set.iter().map(|o| o.0).min()?;
        let i_max = set.iter().map(|o| o.0).max()?;
        let j_min = set.iter().map(|o| o.1).min()?;
        let j_max = set.iter().map(|o| o.1).max()?;
        let width = (i_max - i_min + 1) as usize;
        let height = (j_max - j_min + 1) as usize;
        let mut cells = vec![false; width * height];
        for (i, j) in set {
            cells[(j - j_min) as usize * width + (i - i_min) as usize] = true;
        }
        Some(Self { i_min, j_min, width, height, cells })
    }

    pub fn get(&self, i: i64, j: i64) -> bool {
        let (a, b) = (i - self.i_min, j - self.j_min);
        if a < 0 || b < 0 || a >= self.width as i64 || b >= self.height as i64 {
            return false;
        }
        self.cells[b as usize * self.width + a as usize]
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }
}

/// Edge crossing key in doubled lattice coordinates: the midpoint between
/// lattice points `a` and `b` is `a + b`.
type Key = (i64, i64);

/// Closed outlines of the mask in lattice units (offsets), each
/// counter-clockwise for outer boundaries. Diagonal neighbours count as
/// connected.
fn mask_loops(mask: &RegionMask) -> Vec<Vec<Key>> {
    let mut adjacency: HashMap<Key, Vec<Key>> = HashMap::new();
    let mut link = |a: Key, b: Key| {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    };
    let i_lo = mask.i_min - 1;
    let i_hi = mask.i_min + mask.width as i64;
    let j_lo = mask.j_min - 1;
    let j_hi = mask.j_min + mask.height as i64;
    for j in j_lo..j_hi {
        for i in i_lo..i_hi {
            let bl = mask.get(i, j);
            let br = mask.get(i + 1, j);
            let tr = mask.get(i + 1, j + 1);
            let tl = mask.get(i, j + 1);
            let case = bl as u8 | (br as u8) << 1 | (tr as u8) << 2 | (tl as u8) << 3;
            let bottom = (2 * i + 1, 2 * j);
            let right = (2 * i + 2, 2 * j + 1);
            let top = (2 * i + 1, 2 * j + 2);
            let left = (2 * i, 2 * j + 1);
            match case {
                0 | 15 => {}
                1 | 14 => link(left, bottom),
                2 | 13 => link(bottom, right),
                3 | 12 => link(left, right),
                4 | 11 => link(right, top),
                6 | 9 => link(bottom, top),
                7 | 8 => link(left, top),
                // saddles: members on the diagonal stay joined
                5 => {
                    link(left, top);
                    link(bottom, right);
                }
                10 => {
                    link(left, bottom);
                    link(right, top);
                }
                _ => unreachable!(),
            }
        }
    }

    let mut loops = Vec::new();
    let mut starts: Vec<Key> = adjacency.keys().copied().collect();
    starts.sort_unstable();
    let mut visited: BTreeSet<Key> = BTreeSet::new();
    for start in starts {
        if visited.contains(&start) {
            continue;
        }
        let mut path = vec![start];
        visited.insert(start);
        let mut prev = start;
        let mut cur = adjacency[&start][0];
        while cur != start {
            visited.insert(cur);
            path.push(cur);
            let next = adjacency[&cur].iter().copied().find(|&n| n != prev).unwrap_or(prev);
            prev = cur;
            cur = next;
        }
        if doubled_area(&path) < 0 {
            path.reverse();
        }
        loops.push(path);
    }
    loops
}

/// Twice the signed area in doubled coordinates (i.e. 8× lattice area).
fn doubled_area(path: &[Key]) -> i64 {
    let n = path.len();
    (0..n)
        .map(|k| {
            let (a, b) = (path[k], path[(k + 1) % n]);
            a.0 * b.1 - b.0 * a.1
        })
        .sum()
}

fn to_world<T: Real>(region: &OrthoRegion<T>, key: Key) -> [T; 2] {
    let half = T::half();
    [
        region.center[0] + T::from_i64_lossy(key.0) * half * region.params.dx,
        region.center[1] + T::from_i64_lossy(key.1) * half * region.params.dy,
    ]
}

/// All outlines of the region, largest first, in world coordinates.
pub fn region_contours<T: Real>(region: &OrthoRegion<T>) -> Result<Vec<Vec<[T; 2]>>> {
    let mask = RegionMask::from_offsets(region.members.iter().map(|m| &m.offset)).ok_or(Error::EmptyRegion)?;
    let mut loops = mask_loops(&mask);
    loops.sort_by_key(|l| std::cmp::Reverse(doubled_area(l).abs()));
    Ok(loops.into_iter().map(|l| l.into_iter().map(|k| to_world(region, k)).collect()).collect())
}

/// Outer outline of the region: the largest marching-squares loop of its
/// membership mask, closed implicitly, counter-clockwise.
pub fn region_boundary<T: Real>(region: &OrthoRegion<T>) -> Result<Vec<[T; 2]>> {
    Ok(region_contours(region)?.into_iter().next().expect("non-empty mask has an outline"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polygon_area;
    use crate::ortho::{Member, OrthoParams};

    fn region(offsets: &[(i64, i64)], h: f64) -> OrthoRegion<f64> {
        OrthoRegion {
            center: [1.0, 2.0, 0.0],
            members: offsets
                .iter()
                .map(|&o| Member { offset: o, x: 1.0 + o.0 as f64 * h, y: 2.0 + o.1 as f64 * h, z: 0.0 })
                .collect(),
            boundary: vec![],
            params: OrthoParams::new(0.2, 1.0, h, h).unwrap(),
            connectivity_filtered: false,
        }
    }

    #[test]
    fn single_cell_gives_four_vertices() {
        let b = region_boundary(&region(&[(0, 0)], 0.1)).unwrap();
        assert_eq!(b.len(), 4);
        for v in &b {
            let d = ((v[0] - 1.0).abs()).max((v[1] - 2.0).abs());
            assert!((d - 0.05).abs() < 1e-12);
        }
        assert!(polygon_area(&b) > 0.0);
    }

    #[test]
    fn empty_region_is_an_error() {
        assert!(matches!(region_boundary(&region(&[], 0.1)), Err(Error::EmptyRegion)));
    }

    #[test]
    fn disc_outline_stays_within_a_cell_of_the_radius() {
        let r = 20i64;
        let offsets: Vec<(i64, i64)> =
            (-r..=r).flat_map(|i| (-r..=r).map(move |j| (i, j))).filter(|&(i, j)| i * i + j * j <= r * r).collect();
        let h = 0.01;
        let reg = region(&offsets, h);
        let b = region_boundary(&reg).unwrap();
        for v in &b {
            let dist = (v[0] - 1.0).hypot(v[1] - 2.0);
            assert!((dist - r as f64 * h).abs() <= h, "{dist}");
        }
        let area = polygon_area(&b);
        let mask_area = offsets.len() as f64 * h * h;
        assert!((area - mask_area).abs() / mask_area < 0.05);
    }

    #[test]
    fn holes_and_islands_produce_extra_loops() {
        let mut ring: Vec<(i64, i64)> = (-3i64..=3)
            .flat_map(|i| (-3i64..=3).map(move |j| (i, j)))
            .filter(|&(i, j)| i.abs() == 3 || j.abs() == 3)
            .collect();
        ring.push((0, 0));
        ring.push((10, 10));
        let loops = region_contours(&region(&ring, 1.0)).unwrap();
        // outer, hole, center dot, far island
        assert_eq!(loops.len(), 4);
        assert!(polygon_area(&loops[0]) > 0.0);
    }

    #[test]
    fn diagonal_members_share_one_outline() {
        let loops = region_contours(&region(&[(0, 0), (1, 1)], 1.0)).unwrap();
        assert_eq!(loops.len(), 1);
    }
}
