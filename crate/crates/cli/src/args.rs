use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "epsortho", version, about = "Imaging distances and ε-orthographic regions on terrain surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in surfaces and curves with their parameters.
    Surfaces(SurfacesArgs),
    /// Load a PGM elevation map and report or export the heightfield.
    Dem(DemArgs),
    /// Imaging points of a curve or surface at one or more working distances.
    Imaging(ImagingArgs),
    /// Upper bound on the working distance for a curve.
    #[command(name = "bound-d")]
    BoundD(BoundArgs),
    /// ε-orthographic interval of a curve around one or more abscissae.
    #[command(name = "curve-bounds")]
    CurveBounds(CurveBoundsArgs),
    /// ε-orthographic regions on a surface.
    Region(RegionArgs),
    /// Boundary approximations of ε-orthographic regions.
    Approx(ApproxArgs),
    /// Accuracy and build-time comparison of the approximations.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
    All,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::All)
    }
    pub fn json(self) -> bool {
        matches!(self, Format::Json | Format::All)
    }
    pub fn svg(self) -> bool {
        matches!(self, Format::Svg | Format::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Polygonal,
    Elliptical,
    CircularI,
    CircularIi,
}

#[derive(Debug, Args)]
pub struct SurfacesArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Where the surface comes from: a catalog name or a PGM elevation map.
#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Built-in surface or curve name (see `surfaces`).
    #[arg(long)]
    pub surface: Option<String>,
    /// Catalog parameter override, `key=value` (repeatable).
    #[arg(long = "param", value_parser = parse_kv)]
    pub params: Vec<(String, f64)>,
    /// 8-bit grayscale PGM elevation map.
    #[arg(long)]
    pub dem: Option<PathBuf>,
    /// DEM grid spacing in world units.
    #[arg(long, default_value_t = 1.0)]
    pub spacing: f64,
    /// DEM elevation for intensity 255.
    #[arg(long, default_value_t = 1.0)]
    pub elevation_scale: f64,
    /// Gaussian smoothing of the DEM, in grid cells (0 = none).
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
}

#[derive(Debug, Args)]
pub struct OrthoArgs {
    #[arg(long, default_value_t = 10.0)]
    pub epsilon_deg: f64,
    /// Working distance d.
    #[arg(long, default_value_t = 2.0)]
    pub distance: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dx: f64,
    /// Defaults to `--dx`.
    #[arg(long)]
    pub dy: Option<f64>,
    /// Linearize probe gradients around the center instead of evaluating them.
    #[arg(long)]
    pub fast_gradients: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DemArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ImagingArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Working distance (repeatable).
    #[arg(long = "distance", required = true)]
    pub distances: Vec<f64>,
    #[arg(long, value_enum, default_value = "up")]
    pub orientation: OrientationArg,
    /// Samples along a curve, or per axis on a surface.
    #[arg(long)]
    pub samples: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 1e-3)]
    pub tolerance: f64,
    /// Validity scan step (defaults to the domain span over 2048).
    #[arg(long)]
    pub resolution: Option<f64>,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CurveBoundsArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Center abscissa (`x`, or `x,y` with y ignored); repeatable.
    #[arg(long = "center", value_parser = parse_center, required = true, allow_hyphen_values = true)]
    pub centers: Vec<(f64, Option<f64>)>,
    #[command(flatten)]
    pub ortho: OrthoArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Region center `x,y` (repeatable).
    #[arg(long = "center", value_parser = parse_center, required = true, allow_hyphen_values = true)]
    pub centers: Vec<(f64, Option<f64>)>,
    #[command(flatten)]
    pub ortho: OrthoArgs,
    /// Keep only the 8-connected component containing the center.
    #[arg(long)]
    pub connectivity: bool,
    /// Reset the empty-ring count whenever a ring accepts a point.
    #[arg(long)]
    pub reset_buff: bool,
    /// Also grow each region by brute force and fail unless both agree.
    #[arg(long, hide = true)]
    pub seed_test: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long = "center", value_parser = parse_center, required = true, allow_hyphen_values = true)]
    pub centers: Vec<(f64, Option<f64>)>,
    #[command(flatten)]
    pub ortho: OrthoArgs,
    /// Approximation method (repeatable; default all).
    #[arg(long = "method", value_enum)]
    pub methods: Vec<MethodArg>,
    #[arg(long, default_value_t = 16)]
    pub n_directions: usize,
    #[arg(long, default_value_t = 4.0)]
    pub m_ratio: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long = "center", value_parser = parse_center, allow_hyphen_values = true)]
    pub centers: Vec<(f64, Option<f64>)>,
    /// Add the nine benchmark centers {-1, -0.5, 0} x {-1, -0.5, 0}.
    #[arg(long)]
    pub benchmark: bool,
    #[command(flatten)]
    pub ortho: OrthoArgs,
    #[arg(long = "method", value_enum)]
    pub methods: Vec<MethodArg>,
    #[arg(long, default_value_t = 16)]
    pub n_directions: usize,
    #[arg(long, default_value_t = 4.0)]
    pub m_ratio: f64,
    /// Timing repeats per method (median is reported).
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_kv(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_center(s: &str) -> Result<(f64, Option<f64>), String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
    match s.split_once(',') {
        Some((x, y)) => Ok((num(x)?, Some(num(y)?))),
        None => Ok((num(s)?, None)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centers_and_params_parse() {
        assert_eq!(parse_center("1.5,-2").unwrap(), (1.5, Some(-2.0)));
        assert_eq!(parse_center("0.25").unwrap(), (0.25, None));
        assert!(parse_center("a,1").is_err());
        assert_eq!(parse_kv("radius=3").unwrap(), ("radius".into(), 3.0));
        assert!(parse_kv("radius").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
