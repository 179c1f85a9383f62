use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use epsortho::approx::{approximate, compare_with_region, max_abs_curvature};
use epsortho::export;
use epsortho::imaging::default_scan_resolution;
use epsortho::surface::catalog::{Builtin, CATALOG};
use epsortho::surface::EntryKind;
use epsortho::*;
use serde_json::json;

use crate::args::*;
use crate::output::Artifacts;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, inputs or output location: exit code 2.
    Config(String),
    /// The computation itself failed: exit code 3.
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Compute(m) => write!(f, "computation error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_config_error() {
            CliError::Config(e.to_string())
        } else {
            CliError::Compute(e.to_string())
        }
    }
}

type Res<T> = Result<T, CliError>;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub enum Loaded {
    Surface(AnalyticSurfaceF64),
    Curve(AnalyticCurveF64),
    Dem(HeightFieldF64),
}

impl Loaded {
    fn surface(&self) -> Res<&dyn Surface<f64>> {
        match self {
            Loaded::Surface(s) => Ok(s),
            Loaded::Dem(h) => Ok(h),
            Loaded::Curve(c) => Err(config(format!("`{}` is a curve; this command needs a surface", c.name()))),
        }
    }

    fn curve(&self) -> Res<&AnalyticCurveF64> {
        match self {
            Loaded::Curve(c) => Ok(c),
            Loaded::Surface(s) => Err(config(format!("`{}` is a surface; this command needs a curve", s.name()))),
            Loaded::Dem(_) => Err(config("a DEM is a surface; this command needs a curve")),
        }
    }
}

pub fn load(src: &SourceArgs) -> Res<Loaded> {
    match (&src.surface, &src.dem) {
        (Some(_), Some(_)) => Err(config("give either --surface or --dem, not both")),
        (None, None) => Err(config("a surface source is required: --surface NAME or --dem FILE")),
        (Some(name), None) => {
            let mut params = BTreeMap::new();
            for (k, v) in &src.params {
                if params.insert(k.clone(), *v).is_some() {
                    return Err(config(format!("parameter `{k}` given twice")));
                }
            }
            Ok(match builtin::<f64>(name, &params)? {
                Builtin::Surface(s) => Loaded::Surface(s),
                Builtin::Curve(c) => Loaded::Curve(c),
            })
        }
        (None, Some(path)) => {
            if !src.params.is_empty() {
                return Err(config("--param only applies to built-in surfaces"));
            }
            if !(src.spacing.is_finite() && src.spacing > 0.0) {
                return Err(config("--spacing must be finite and > 0"));
            }
            let hf: HeightFieldF64 = load_dem(path, (src.spacing, src.spacing), src.elevation_scale)?;
            Ok(Loaded::Dem(hf.smooth(src.sigma)?))
        }
    }
}

fn ortho_params(o: &OrthoArgs) -> Res<OrthoParamsF64> {
    Ok(OrthoParamsF64::from_degrees(o.epsilon_deg, o.distance, o.dx, o.dy.unwrap_or(o.dx))?)
}

fn gradient_mode(o: &OrthoArgs) -> GradientMode {
    if o.fast_gradients {
        GradientMode::FirstOrder
    } else {
        GradientMode::Exact
    }
}

fn surface_centers(centers: &[(f64, Option<f64>)]) -> Res<Vec<(f64, f64)>> {
    centers
        .iter()
        .map(|&(x, y)| {
            let y = y.ok_or_else(|| config(format!("center `{x}` needs both coordinates, as x,y")))?;
            if x.is_finite() && y.is_finite() {
                Ok((x, y))
            } else {
                Err(config("center coordinates must be finite"))
            }
        })
        .collect()
}

fn methods(selected: &[MethodArg]) -> Vec<Method> {
    if selected.is_empty() {
        return Method::ALL.to_vec();
    }
    let mut out: Vec<Method> = Vec::new();
    for m in selected {
        let m = match m {
            MethodArg::Polygonal => Method::Polygonal,
            MethodArg::Elliptical => Method::Elliptical,
            MethodArg::CircularI => Method::CircularOne,
            MethodArg::CircularIi => Method::CircularTwo,
        };
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

fn require_no_svg(format: Format, what: &str) -> Res<()> {
    if format == Format::Svg {
        Err(config(format!("no SVG output is available for {what}")))
    } else {
        Ok(())
    }
}

pub fn surfaces(args: &SurfacesArgs) -> Res<Artifacts> {
    let mut a = Artifacts::default();
    let kind = |k: EntryKind| match k {
        EntryKind::Surface => "surface",
        EntryKind::Curve => "curve",
    };
    match args.format {
        Format::Json => {
            let list: Vec<_> = CATALOG
                .iter()
                .map(|e| {
                    let params: BTreeMap<_, _> = e.params.iter().map(|(k, v)| (*k, *v)).collect();
                    json!({ "name": e.name, "kind": kind(e.kind), "formula": e.formula, "params": params, "nonsmooth": e.nonsmooth })
                })
                .collect();
            a.stdout = export::to_json(&list);
        }
        Format::Csv | Format::All => {
            a.stdout.push_str("name,kind,formula,params\n");
            for e in CATALOG {
                let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(a.stdout, "{},{},\"{}\",{}", e.name, kind(e.kind), e.formula, params.join(" ")).unwrap();
            }
        }
        Format::Svg => return Err(config("the catalog has no SVG form")),
    }
    Ok(a)
}

pub fn dem(args: &DemArgs) -> Res<Artifacts> {
    require_no_svg(args.output.format, "DEM summaries")?;
    if args.source.dem.is_none() {
        return Err(config("`dem` needs --dem FILE"));
    }
    let Loaded::Dem(hf) = load(&args.source)? else { unreachable!("--dem loads a heightfield") };
    let (lo, hi) = hf.min_max();
    let mut a = Artifacts::default();
    writeln!(
        a.stdout,
        "{} x {} nodes, spacing {}, elevation range [{lo}, {hi}], mean {}",
        hf.nx(),
        hf.ny(),
        args.source.spacing,
        hf.mean()
    )
    .unwrap();
    if args.output.format.csv() {
        a.file("heightfield.csv", hf.to_csv());
    }
    if args.output.format.json() {
        let d = hf.domain();
        a.file(
            "dem.json",
            export::to_json(&json!({
                "nx": hf.nx(), "ny": hf.ny(), "spacing": hf.spacing(), "origin": hf.origin(),
                "elevation_scale": hf.elevation_scale(), "sigma": args.source.sigma,
                "domain": [d.x_lo, d.x_hi, d.y_lo, d.y_hi], "min": lo, "max": hi, "mean": hf.mean(),
            })),
        );
    }
    Ok(a)
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| if n == 1 { lo } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 })
}

pub fn imaging(args: &ImagingArgs) -> Res<Artifacts> {
    if let Some(d) = args.distances.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
        return Err(config(format!("--distance {d}: must be finite and > 0")));
    }
    if args.samples.is_some_and(|n| n < 2) {
        return Err(config("--samples must be at least 2"));
    }
    let loaded = load(&args.source)?;
    let mut a = Artifacts::default();
    let format = args.output.format;
    match &loaded {
        Loaded::Curve(curve) => {
            let dom = curve.domain();
            let xs: Vec<f64> =
                linspace(dom.lo, dom.hi, args.samples.unwrap_or(401)).filter(|&x| !curve.is_nonsmooth_at(x)).collect();
            let res = default_scan_resolution(dom);
            let mut rows = Vec::new();
            let mut families = Vec::new();
            let mut reports = Vec::new();
            for &d in &args.distances {
                let mut pts = Vec::with_capacity(xs.len());
                for &x in &xs {
                    let (xi, yi) = imaging_curve(curve, x, d)?;
                    rows.push((x, curve.eval(x)?, xi, yi, d));
                    pts.push([xi, yi]);
                }
                let report = curve_validity(curve, d, res)?;
                let stride = report.violations.len().div_ceil(200).max(1);
                let mut markers = Vec::new();
                for &x in report.violations.iter().step_by(stride) {
                    let (xi, yi) = imaging_curve(curve, x, d)?;
                    markers.push([xi, yi]);
                }
                writeln!(
                    a.stdout,
                    "d = {d}: {} ({} violating samples)",
                    if report.valid { "valid" } else { "invalid" },
                    report.violations.len()
                )
                .unwrap();
                reports.push(json!({ "d": d, "valid": report.valid, "violations": report.violations.len(),
                    "first_violation": report.violations.first() }));
                families.push((d, pts, markers));
            }
            if format.csv() {
                a.file("imaging.csv", export::imaging_curve_csv(&rows));
            }
            if format.json() {
                a.file("imaging.json", export::to_json(&json!({ "curve": curve.name(), "distances": reports })));
            }
            if format.svg() {
                a.file("imaging.svg", export::imaging_curves_svg(curve, &families));
            }
        }
        _ => {
            require_no_svg(format, "surface imaging")?;
            let surface = loaded.surface()?;
            let orientation = match args.orientation {
                OrientationArg::Up => Orientation::Up,
                OrientationArg::Down => Orientation::Down,
            };
            let n = args.samples.unwrap_or(41);
            let dom = surface.domain();
            let mut samples = Vec::new();
            for &d in &args.distances {
                for y in linspace(dom.y_lo, dom.y_hi, n) {
                    for x in linspace(dom.x_lo, dom.x_hi, n) {
                        samples.push(imaging_point(surface, x, y, d, orientation)?);
                    }
                }
            }
            writeln!(a.stdout, "{} imaging points for {} distance(s)", samples.len(), args.distances.len()).unwrap();
            if format.csv() {
                a.file("imaging.csv", export::imaging_surface_csv(&samples));
            }
            if format.json() {
                a.file("imaging.json", export::to_json(&samples));
            }
        }
    }
    Ok(a)
}

pub fn bound_d(args: &BoundArgs) -> Res<Artifacts> {
    if let Some(r) = args.resolution {
        if !(r.is_finite() && r > 0.0) {
            return Err(config("--resolution must be finite and > 0"));
        }
    }
    let loaded = load(&args.source)?;
    let curve = loaded.curve()?;
    let res = args.resolution.unwrap_or_else(|| default_scan_resolution(curve.domain()));
    let bound = upper_bound_d(curve, args.tolerance, res)?;
    let stdout = if args.json {
        export::to_json(&json!({ "curve": curve.name(), "kind": bound.kind, "value": bound.value,
            "tolerance": bound.tolerance, "domain": [bound.domain.lo, bound.domain.hi], "probes": bound.probes.len() }))
    } else {
        export::bound_report(curve.name(), &bound)
    };
    Ok(Artifacts { stdout, ..Artifacts::default() })
}

pub fn curve_bounds_cmd(args: &CurveBoundsArgs) -> Res<Artifacts> {
    let params = ortho_params(&args.ortho)?;
    let loaded = load(&args.source)?;
    let curve = loaded.curve()?;
    let mode = gradient_mode(&args.ortho);
    let mut a = Artifacts::default();
    let mut list = Vec::new();
    for &(x0, _) in &args.centers {
        let b = epsortho::ortho::curve_bounds_with_mode(curve, x0, &params, mode)?;
        if args.json {
            list.push(json!({ "x0": x0, "x_left": b.x_left, "x_right": b.x_right, "width": b.width() }));
        } else {
            writeln!(a.stdout, "x0 = {x0}: [{}, {}], width {}", b.x_left, b.x_right, b.width()).unwrap();
        }
    }
    if args.json {
        a.stdout = export::to_json(&list);
    }
    Ok(a)
}

fn region_summary(k: usize, r: &OrthoRegionF64) -> serde_json::Value {
    json!({
        "center_index": k, "center": r.center, "members": r.len(), "area": r.area(),
        "connectivity_filtered": r.connectivity_filtered, "params": r.params, "boundary": r.boundary,
    })
}

pub fn region(args: &RegionArgs) -> Res<Artifacts> {
    let params = ortho_params(&args.ortho)?;
    let centers = surface_centers(&args.centers)?;
    let loaded = load(&args.source)?;
    let surface = loaded.surface()?;
    let opts = RegionOptions {
        connectivity_filter: args.connectivity,
        reset_on_accept: args.reset_buff,
        gradient_mode: gradient_mode(&args.ortho),
        ..RegionOptions::default()
    };
    let format = args.output.format;
    let mut a = Artifacts::default();
    let mut summaries = Vec::new();
    for (k, &(x, y)) in centers.iter().enumerate() {
        let r = surface_region(surface, x, y, &params, &opts)?;
        if args.seed_test {
            let oracle = brute_force_region(surface, x, y, &params, &opts)?;
            if oracle.offsets() != r.offsets() {
                return Err(CliError::Compute(format!(
                    "oracle mismatch at ({x}, {y}): grown {} members, brute force {}",
                    r.len(),
                    oracle.len()
                )));
            }
            writeln!(a.stdout, "oracle check at ({x}, {y}): ok").unwrap();
        }
        writeln!(a.stdout, "center {k} ({x}, {y}): {} members, area {}", r.len(), r.area()).unwrap();
        if format.csv() {
            a.file(format!("region_{k}_members.csv"), export::region_members_csv(&r));
            a.file(format!("region_{k}_boundary.csv"), export::polyline_csv(&r.boundary));
        }
        if format.svg() {
            a.file(format!("region_{k}.svg"), export::region_overlay_svg(surface, &[&r]));
        }
        summaries.push(region_summary(k, &r));
    }
    if format.json() {
        a.file("regions.json", export::to_json(&summaries));
    }
    Ok(a)
}

fn check_approx_knobs(n: usize, m: f64, methods: &[Method]) -> Res<()> {
    if n < 3 {
        return Err(config("--n-directions must be at least 3"));
    }
    if methods.contains(&Method::Elliptical) && (n < 4 || !n.is_multiple_of(2)) {
        return Err(config("the elliptical method needs an even --n-directions of at least 4"));
    }
    if !(m.is_finite() && m > 1.0) {
        return Err(config("--m-ratio must be finite and > 1"));
    }
    Ok(())
}

fn outline_of(a: &BoundaryApproxF64) -> Vec<[f64; 2]> {
    match &a.shape {
        ApproxShape::Polygon { vertices } => vertices.clone(),
        shape => shape.outline(360),
    }
}

pub fn approx(args: &ApproxArgs) -> Res<Artifacts> {
    let params = ortho_params(&args.ortho)?;
    let centers = surface_centers(&args.centers)?;
    let chosen = methods(&args.methods);
    check_approx_knobs(args.n_directions, args.m_ratio, &chosen)?;
    let loaded = load(&args.source)?;
    let surface = loaded.surface()?;
    let k_max =
        if chosen.contains(&Method::CircularTwo) { max_abs_curvature(surface, params.dx, params.dy)? } else { 0.0 };
    let format = args.output.format;
    let mut a = Artifacts::default();
    for (k, &(x, y)) in centers.iter().enumerate() {
        let region = surface_region(surface, x, y, &params, &RegionOptions::default())?;
        let mut built = Vec::new();
        for &m in &chosen {
            let ap = approximate(surface, x, y, m, &params, args.n_directions, args.m_ratio, k_max)?;
            writeln!(
                a.stdout,
                "center {k} ({x}, {y}) {}: area {} (exact {})",
                m.name(),
                ap.shape.area(),
                region.area()
            )
            .unwrap();
            if format.csv() {
                a.file(format!("approx_{k}_{}.csv", m.name()), export::polyline_csv(&outline_of(&ap)));
            }
            built.push(ap);
        }
        if format.json() {
            a.file(format!("approx_{k}.json"), export::to_json(&built));
        }
        if format.svg() {
            let refs: Vec<&BoundaryApproxF64> = built.iter().collect();
            a.file(format!("approx_{k}.svg"), export::approx_overlay_svg(&region, &refs));
        }
    }
    Ok(a)
}

pub const BENCHMARK_CENTERS: [(f64, f64); 9] = [
    (-1.0, -1.0),
    (-1.0, -0.5),
    (-1.0, 0.0),
    (-0.5, -1.0),
    (-0.5, -0.5),
    (-0.5, 0.0),
    (0.0, -1.0),
    (0.0, -0.5),
    (0.0, 0.0),
];

pub fn compare_cmd(args: &CompareArgs) -> Res<Artifacts> {
    let params = ortho_params(&args.ortho)?;
    let mut centers = surface_centers(&args.centers)?;
    if args.benchmark {
        centers.extend(BENCHMARK_CENTERS);
    }
    if centers.is_empty() {
        return Err(config("give at least one --center or --benchmark"));
    }
    let chosen = methods(&args.methods);
    check_approx_knobs(args.n_directions, args.m_ratio, &chosen)?;
    if args.repeats == 0 {
        return Err(config("--repeats must be at least 1"));
    }
    let loaded = load(&args.source)?;
    let surface = loaded.surface()?;
    let k_max =
        if chosen.contains(&Method::CircularTwo) { max_abs_curvature(surface, params.dx, params.dy)? } else { 0.0 };
    let cfg = CompareConfig {
        n_directions: args.n_directions,
        m_ratio: args.m_ratio,
        k_max: Some(k_max),
        repeats: args.repeats,
        ..CompareConfig::default()
    };
    let format = args.output.format;
    let mut a = Artifacts::default();
    let mut rows = Vec::new();
    writeln!(
        a.stdout,
        "{:>3} {:>8} {:>8} {:<12} {:>7} {:>10} {:>10} {:>11}",
        "k", "x0", "y0", "method", "iou", "area_ratio", "hausdorff", "build_s"
    )
    .unwrap();
    for (k, &(x, y)) in centers.iter().enumerate() {
        let region = surface_region(surface, x, y, &params, &RegionOptions::default())?;
        if region.len() < 2 {
            return Err(CliError::Compute(format!("degenerate region at ({x}, {y})")));
        }
        let (_, results) = compare_with_region(surface, &region, &chosen, &cfg)?;
        for r in &results {
            writeln!(
                a.stdout,
                "{k:>3} {x:>8.3} {y:>8.3} {:<12} {:>7.4} {:>10.4} {:>10.4} {:>11.3e}",
                r.method.name(),
                r.iou,
                r.area_ratio,
                r.hausdorff,
                r.build_time
            )
            .unwrap();
        }
        if format.svg() {
            let refs: Vec<&BoundaryApproxF64> = results.iter().map(|r| &r.approx).collect();
            a.file(format!("compare_{k}.svg"), export::approx_overlay_svg(&region, &refs));
        }
        rows.extend(results.into_iter().map(|r| (k, [x, y], r)));
    }
    if format.csv() {
        a.file("comparison.csv", export::comparison_csv(&rows));
    }
    if format.json() {
        let records: Vec<_> =
            rows.iter().map(|(k, c, r)| json!({ "center_index": k, "center": c, "comparison": r })).collect();
        a.file("comparison.json", export::to_json(&records));
    }
    Ok(a)
}
