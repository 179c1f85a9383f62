use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by surface construction, geometry and region computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed PGM: {0}")]
    MalformedImage(String),
    #[error("image is not 8-bit grayscale PGM (magic {0})")]
    NotGrayscale(String),
    #[error("unsupported bit depth: maxval {0} exceeds 255")]
    BitDepth(u32),
    #[error("grid too small: {nx}x{ny}, need at least 2x2")]
    GridTooSmall { nx: usize, ny: usize },
    #[error("invalid elevation scale {0}; must be finite and > 0")]
    InvalidScale(f64),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("point ({x}, {y}) is outside the surface domain")]
    OutOfDomain { x: f64, y: f64 },
    #[error("x = {0} is a non-smooth point of the curve")]
    NonSmoothPoint(f64),
    #[error("unknown surface or curve `{0}`")]
    UnknownSurface(String),
    #[error("degenerate region: {0}")]
    DegenerateRegion(String),
    #[error("region is empty")]
    EmptyRegion,
}

impl Error {
    pub(crate) fn param(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name: name.to_string(), reason: reason.into() }
    }

    /// True for errors caused by bad input parameters rather than by the computation itself.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::MalformedImage(_)
                | Error::NotGrayscale(_)
                | Error::BitDepth(_)
                | Error::GridTooSmall { .. }
                | Error::InvalidScale(_)
                | Error::InvalidParameter { .. }
                | Error::NonFinite(_)
                | Error::UnknownSurface(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
