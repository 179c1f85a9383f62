//! 8-bit grayscale PGM (P2 ASCII / P5 binary) reading and writing.

use std::path::Path;

use super::HeightField;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Decoded grayscale raster, row 0 = top image row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

struct Tokens<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn skip_ws_and_comments(&mut self) {
        while self.pos < self.data.len() {
            let c = self.data[self.pos];
            if c == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Option<&'a [u8]> {
        self.skip_ws_and_comments();
        let start = self.pos;
        while self.pos < self.data.len() && !self.data[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.data[start..self.pos])
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        let tok = self.next().ok_or_else(|| Error::MalformedImage(format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedImage(format!("invalid {what}")))
    }
}

pub fn parse_pgm(data: &[u8]) -> Result<GrayImage> {
    let mut t = Tokens { data, pos: 0 };
    let magic = t.next().ok_or_else(|| Error::MalformedImage("empty file".into()))?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        other if other.len() == 2 && other[0] == b'P' => {
            return Err(Error::NotGrayscale(String::from_utf8_lossy(other).into_owned()))
        }
        _ => return Err(Error::MalformedImage("missing PGM magic".into())),
    };
    let width = t.number("width")? as usize;
    let height = t.number("height")? as usize;
    let maxval = t.number("maxval")?;
    if maxval == 0 {
        return Err(Error::MalformedImage("maxval must be positive".into()));
    }
    if maxval > 255 {
        return Err(Error::BitDepth(maxval));
    }
    if width < 2 || height < 2 {
        return Err(Error::GridTooSmall { nx: width, ny: height });
    }
    let count = width * height;
    let pixels = if binary {
        // exactly one whitespace byte separates the header from the raster
        let start = t.pos + 1;
        let raster = data.get(start..start + count).ok_or_else(|| Error::MalformedImage("truncated raster".into()))?;
        raster.to_vec()
    } else {
        let mut px = Vec::with_capacity(count);
        for _ in 0..count {
            let v = t.number("pixel")?;
            if v > maxval {
                return Err(Error::MalformedImage(format!("pixel {v} exceeds maxval {maxval}")));
            }
            px.push(v as u8);
        }
        px
    };
    if pixels.iter().any(|&v| u32::from(v) > maxval) {
        return Err(Error::MalformedImage("pixel exceeds maxval".into()));
    }
    Ok(GrayImage { width, height, pixels })
}

/// Binary (P5) encoding of `img`.
pub fn encode_p5(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}

/// Heightfield from a grayscale raster: elevation = raw / 255 · `elevation_scale`.
/// The top image row maps to the maximal y; the origin is `(0, 0)`.
pub fn image_to_heightfield<T: Real>(img: &GrayImage, spacing: (T, T), elevation_scale: T) -> Result<HeightField<T>> {
    if !(elevation_scale.is_finite() && elevation_scale > T::zero()) {
        return Err(Error::InvalidScale(elevation_scale.to_f64_lossy()));
    }
    let full = T::lit(255.0);
    let mut z = Vec::with_capacity(img.pixels.len());
    for row in (0..img.height).rev() {
        for col in 0..img.width {
            let raw = T::from_u8(img.pixels[row * img.width + col]).unwrap();
            z.push(raw / full * elevation_scale);
        }
    }
    HeightField::new(img.width, img.height, spacing, (T::zero(), T::zero()), elevation_scale, z)
}

/// Loads an 8-bit PGM as a heightfield.
pub fn load_dem<T: Real>(path: impl AsRef<Path>, spacing: (T, T), elevation_scale: T) -> Result<HeightField<T>> {
    if !(elevation_scale.is_finite() && elevation_scale > T::zero()) {
        return Err(Error::InvalidScale(elevation_scale.to_f64_lossy()));
    }
    let path = path.as_ref();
    let data = std::fs::read(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let img = parse_pgm(&data)?;
    image_to_heightfield(&img, spacing, elevation_scale)
}
