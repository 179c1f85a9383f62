//! Small planar geometry helpers: shoelace area, containment, distances.

use crate::scalar::Real;

/// Signed shoelace area of a closed polygon (positive when counter-clockwise).
pub fn polygon_area<T: Real>(poly: &[[T; 2]]) -> T {
    let n = poly.len();
    if n < 3 {
        return T::zero();
    }
    let twice = (0..n).fold(T::zero(), |acc, k| {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        acc + (a[0] * b[1] - b[0] * a[1])
    });
    twice * T::half()
}

/// Even-odd point-in-polygon test.
pub fn point_in_polygon<T: Real>(pt: [T; 2], poly: &[[T; 2]]) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n.wrapping_sub(1);
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a[1] > pt[1]) != (b[1] > pt[1]) {
            let x_cross = a[0] + (pt[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if pt[0] < x_cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Same test, but points on an edge (within `tol`) count as inside.
pub fn point_in_or_on_polygon<T: Real>(pt: [T; 2], poly: &[[T; 2]], tol: T) -> bool {
    point_in_polygon(pt, poly) || distance_to_polyline(pt, poly, true) <= tol
}

pub fn point_segment_distance<T: Real>(p: [T; 2], a: [T; 2], b: [T; 2]) -> T {
    let (vx, vy) = (b[0] - a[0], b[1] - a[1]);
    let (wx, wy) = (p[0] - a[0], p[1] - a[1]);
    let len2 = vx * vx + vy * vy;
    let t = if len2 > T::zero() { ((wx * vx + wy * vy) / len2).max(T::zero()).min(T::one()) } else { T::zero() };
    (wx - t * vx).hypot(wy - t * vy)
}

/// Distance from `p` to a polyline (closed when `closed` is set).
pub fn distance_to_polyline<T: Real>(p: [T; 2], line: &[[T; 2]], closed: bool) -> T {
    match line.len() {
        0 => T::infinity(),
        1 => (p[0] - line[0][0]).hypot(p[1] - line[0][1]),
        n => {
            let segs = if closed { n } else { n - 1 };
            (0..segs).fold(T::infinity(), |best, k| best.min(point_segment_distance(p, line[k], line[(k + 1) % n])))
        }
    }
}

/// Symmetric Hausdorff distance between two closed polylines, using vertices
/// of each against segments of the other.
pub fn hausdorff<T: Real>(a: &[[T; 2]], b: &[[T; 2]]) -> T {
    let directed = |from: &[[T; 2]], to: &[[T; 2]]| {
        from.iter().fold(T::zero(), |worst, &p| worst.max(distance_to_polyline(p, to, true)))
    };
    directed(a, b).max(directed(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Vec<[f64; 2]> {
        vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    }

    #[test]
    fn shoelace_orientation() {
        let mut sq = unit_square();
        assert_eq!(polygon_area(&sq), 1.0);
        sq.reverse();
        assert_eq!(polygon_area(&sq), -1.0);
    }

    #[test]
    fn containment() {
        let sq = unit_square();
        assert!(point_in_polygon([0.5, 0.5], &sq));
        assert!(!point_in_polygon([1.5, 0.5], &sq));
        assert!(point_in_or_on_polygon([1.0, 0.5], &sq, 1e-12));
    }

    #[test]
    fn hausdorff_of_nested_squares() {
        let a = unit_square();
        let b: Vec<[f64; 2]> = a.iter().map(|p| [p[0] * 2.0 - 0.5, p[1] * 2.0 - 0.5]).collect();
        assert!((hausdorff(&a, &b) - 0.5f64.hypot(0.5)).abs() < 1e-12);
        assert_eq!(hausdorff(&a, &a), 0.0);
    }
}
