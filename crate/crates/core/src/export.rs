//! Text emitters for the file formats: CSV tables, SVG overlays, JSON reports.
//!
//! Everything here is a pure function returning a `String`, so identical inputs
//! give byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;

use crate::approx::{ApproxComparison, ApproxShape, BoundaryApprox};
use crate::imaging::{ImagingSample, UpperBound};
use crate::ortho::OrthoRegion;
use crate::scalar::Real;
use crate::surface::{AnalyticCurve, Surface};

/// `x,y,x',y',d` rows for curve imaging points.
pub fn imaging_curve_csv<T: Real>(rows: &[(T, T, T, T, T)]) -> String {
    let mut out = String::from("x,y,x',y',d\n");
    for (x, y, xi, yi, d) in rows {
        writeln!(out, "{x},{y},{xi},{yi},{d}").unwrap();
    }
    out
}

/// `x,y,z,x',y',z',d` rows for surface imaging points.
pub fn imaging_surface_csv<T: Real>(samples: &[ImagingSample<T>]) -> String {
    let mut out = String::from("x,y,z,x',y',z',d\n");
    for s in samples {
        let [x, y, z] = s.base;
        let [xi, yi, zi] = s.image;
        writeln!(out, "{x},{y},{z},{xi},{yi},{zi},{}", s.d).unwrap();
    }
    out
}

/// Member lattice offsets and world coordinates.
pub fn region_members_csv<T: Real>(region: &OrthoRegion<T>) -> String {
    let mut out = String::from("i,j,x,y,z\n");
    for m in &region.members {
        writeln!(out, "{},{},{},{},{}", m.offset.0, m.offset.1, m.x, m.y, m.z).unwrap();
    }
    out
}

pub fn polyline_csv<T: Real>(points: &[[T; 2]]) -> String {
    let mut out = String::from("x,y\n");
    for p in points {
        writeln!(out, "{},{}", p[0], p[1]).unwrap();
    }
    out
}

pub fn comparison_csv<T: Real>(rows: &[(usize, [T; 2], ApproxComparison<T>)]) -> String {
    let mut out = String::from("center_index,x0,y0,method,tag,iou,area_ratio,hausdorff,build_time\n");
    for (k, c, r) in rows {
        writeln!(
            out,
            "{k},{},{},{},{},{},{},{},{:e}",
            c[0],
            c[1],
            r.method.name(),
            r.method_tag,
            r.iou,
            r.area_ratio,
            r.hausdorff,
            r.build_time
        )
        .unwrap();
    }
    out
}

pub fn to_json<V: Serialize + ?Sized>(value: &V) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

pub fn bound_report<T: Real>(curve: &str, b: &UpperBound<T>) -> String {
    match b.value {
        Some(v) => format!("{curve}: D = {v} (finite, tolerance {})\n", b.tolerance),
        None => format!(
            "{curve}: {}\n",
            match b.kind {
                crate::imaging::BoundKind::Infinite => "infinite",
                crate::imaging::BoundKind::Zero => "zero",
                crate::imaging::BoundKind::Finite => "finite",
            }
        ),
    }
}

/// Minimal SVG canvas in world coordinates (y up).
pub struct SvgCanvas {
    x_lo: f64,
    y_hi: f64,
    scale: f64,
    width: f64,
    height: f64,
    body: String,
}

impl SvgCanvas {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64, max_px: f64) -> Self {
        let span = (x_hi - x_lo).max(y_hi - y_lo).max(f64::MIN_POSITIVE);
        let scale = max_px / span;
        Self {
            x_lo,
            y_hi,
            scale,
            width: ((x_hi - x_lo) * scale).max(1.0),
            height: ((y_hi - y_lo) * scale).max(1.0),
            body: String::new(),
        }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x_lo) * self.scale, (self.y_hi - y) * self.scale)
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let (px, py) = self.px(x, y + h);
        writeln!(
            self.body,
            r#"<rect x="{px:.3}" y="{py:.3}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
            w * self.scale,
            h * self.scale
        )
        .unwrap();
    }

    pub fn polyline(&mut self, pts: &[[f64; 2]], closed: bool, stroke: &str, width: f64) {
        let coords: Vec<String> = pts
            .iter()
            .map(|p| {
                let (x, y) = self.px(p[0], p[1]);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let tag = if closed { "polygon" } else { "polyline" };
        writeln!(
            self.body,
            r#"<{tag} points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
            coords.join(" ")
        )
        .unwrap();
    }

    pub fn circle(&mut self, x: f64, y: f64, r_px: f64, fill: &str, class: &str) {
        let (px, py) = self.px(x, y);
        writeln!(self.body, r#"<circle class="{class}" cx="{px:.3}" cy="{py:.3}" r="{r_px}" fill="{fill}"/>"#).unwrap();
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.3} {h:.3}\">\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

/// Dark blue → red → yellow ramp for `t ∈ [0, 1]`.
pub fn heat_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let (r, g, b) = if t < 0.5 {
        let u = t * 2.0;
        (40.0 + 200.0 * u, 20.0 + 40.0 * u, 120.0 - 80.0 * u)
    } else {
        let u = (t - 0.5) * 2.0;
        (240.0 + 15.0 * u, 60.0 + 180.0 * u, 40.0 + 40.0 * u)
    };
    format!("#{:02x}{:02x}{:02x}", r as u8, g as u8, b as u8)
}

/// Distance, imaging-curve points and intersection markers.
pub type CurveFamily<T> = (T, Vec<[T; 2]>, Vec<[T; 2]>);

/// Curve `C` in blue, each imaging curve in grey shades, and red markers at
/// imaging points that fall below `C`.
pub fn imaging_curves_svg<T: Real>(curve: &AnalyticCurve<T>, families: &[CurveFamily<T>]) -> String {
    let dom = curve.domain();
    let base: Vec<[f64; 2]> = (0..=400)
        .map(|k| {
            let x = dom.lo + dom.span() * T::from_usize(k).unwrap() / T::lit(400.0);
            [x.to_f64_lossy(), curve.eval(x).map(|v| v.to_f64_lossy()).unwrap_or(f64::NAN)]
        })
        .collect();
    let all = base
        .iter()
        .copied()
        .chain(families.iter().flat_map(|(_, pts, _)| pts.iter().map(|p| [p[0].to_f64_lossy(), p[1].to_f64_lossy()])));
    let (mut xl, mut xh, mut yl, mut yh) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in all.filter(|p| p[0].is_finite() && p[1].is_finite()) {
        xl = xl.min(p[0]);
        xh = xh.max(p[0]);
        yl = yl.min(p[1]);
        yh = yh.max(p[1]);
    }
    let mut svg = SvgCanvas::new(xl, xh, yl, yh, 800.0);
    svg.polyline(&base, false, "blue", 2.0);
    for (k, (_, pts, bad)) in families.iter().enumerate() {
        let shade = 60 + (k * 40) % 160;
        let line: Vec<[f64; 2]> = pts.iter().map(|p| [p[0].to_f64_lossy(), p[1].to_f64_lossy()]).collect();
        svg.polyline(&line, false, &format!("rgb({shade},{shade},{shade})"), 1.0);
        for p in bad {
            svg.circle(p[0].to_f64_lossy(), p[1].to_f64_lossy(), 2.5, "red", "intersection");
        }
    }
    svg.finish()
}

fn window_of<T: Real>(regions: &[&OrthoRegion<T>]) -> (f64, f64, f64, f64) {
    let mut w = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for r in regions {
        for p in &r.boundary {
            w.0 = w.0.min(p[0].to_f64_lossy());
            w.1 = w.1.max(p[0].to_f64_lossy());
            w.2 = w.2.min(p[1].to_f64_lossy());
            w.3 = w.3.max(p[1].to_f64_lossy());
        }
    }
    let pad = 0.25 * (w.1 - w.0).max(w.3 - w.2);
    (w.0 - pad, w.1 + pad, w.2 - pad, w.3 + pad)
}

/// Heat-shaded surface with region members in white and centers in red.
pub fn region_overlay_svg<T: Real, S: Surface<T> + ?Sized>(surface: &S, regions: &[&OrthoRegion<T>]) -> String {
    let (mut xl, mut xh, mut yl, mut yh) = window_of(regions);
    let dom = surface.domain();
    xl = xl.max(dom.x_lo.to_f64_lossy());
    xh = xh.min(dom.x_hi.to_f64_lossy());
    yl = yl.max(dom.y_lo.to_f64_lossy());
    yh = yh.min(dom.y_hi.to_f64_lossy());
    let mut svg = SvgCanvas::new(xl, xh, yl, yh, 600.0);
    const CELLS: usize = 80;
    let (cw, ch) = ((xh - xl) / CELLS as f64, (yh - yl) / CELLS as f64);
    let heights: Vec<f64> = (0..CELLS * CELLS)
        .map(|k| {
            let (i, j) = (k % CELLS, k / CELLS);
            let x = T::lit(xl + (i as f64 + 0.5) * cw);
            let y = T::lit(yl + (j as f64 + 0.5) * ch);
            surface.height(x, y).map(|v| v.to_f64_lossy()).unwrap_or(f64::NAN)
        })
        .collect();
    let (lo, hi) = heights
        .iter()
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let range = if hi > lo { hi - lo } else { 1.0 };
    for (k, h) in heights.iter().enumerate() {
        let (i, j) = (k % CELLS, k / CELLS);
        svg.rect(xl + i as f64 * cw, yl + j as f64 * ch, cw, ch, &heat_color((h - lo) / range));
    }
    for r in regions {
        let (dx, dy) = (r.params.dx.to_f64_lossy(), r.params.dy.to_f64_lossy());
        for m in &r.members {
            svg.rect(m.x.to_f64_lossy() - dx / 2.0, m.y.to_f64_lossy() - dy / 2.0, dx, dy, "white");
        }
        svg.circle(r.center[0].to_f64_lossy(), r.center[1].to_f64_lossy(), 3.0, "red", "center");
    }
    svg.finish()
}

/// Exact boundary in blue, approximation in red, ray endpoints as dots.
pub fn approx_overlay_svg<T: Real>(region: &OrthoRegion<T>, approx: &[&BoundaryApprox<T>]) -> String {
    let (xl, xh, yl, yh) = window_of(&[region]);
    let mut svg = SvgCanvas::new(xl, xh, yl, yh, 600.0);
    let f =
        |pts: &[[T; 2]]| -> Vec<[f64; 2]> { pts.iter().map(|p| [p[0].to_f64_lossy(), p[1].to_f64_lossy()]).collect() };
    svg.polyline(&f(&region.boundary), true, "blue", 1.5);
    for a in approx {
        let outline = match &a.shape {
            ApproxShape::Polygon { vertices } => vertices.clone(),
            shape => shape.outline(360),
        };
        svg.polyline(&f(&outline), true, "red", 1.5);
        for r in &a.rays {
            svg.circle(r.endpoint[0].to_f64_lossy(), r.endpoint[1].to_f64_lossy(), 2.0, "red", "ray-endpoint");
        }
    }
    svg.circle(region.center[0].to_f64_lossy(), region.center[1].to_f64_lossy(), 3.0, "black", "center");
    svg.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heat_ramp_endpoints() {
        assert_eq!(heat_color(0.0), "#281478");
        assert_eq!(heat_color(1.0), "#fff050");
    }

    #[test]
    fn canvas_flips_y() {
        let mut c = SvgCanvas::new(0.0, 10.0, 0.0, 10.0, 100.0);
        c.circle(0.0, 10.0, 1.0, "red", "p");
        let s = c.finish();
        assert!(s.contains(r#"cx="0.000" cy="0.000""#));
        assert!(s.starts_with("<svg"));
    }

    #[test]
    fn imaging_csv_header() {
        let s = imaging_curve_csv(&[(0.0, 0.0, 0.0, 1.0, 1.0)]);
        assert_eq!(s, "x,y,x',y',d\n0,0,0,1,1\n");
    }
}
