//! Float image containers, file IO, pyramids, and bilinear sampling.
//!
//! Images are row-major, channel-interleaved `f32` rasters. PFM is the
//! canonical float interchange format (bit-exact round trips); PGM and PNG
//! are supported as integer inputs scaled to `[0,1]`, and 8-bit PGM/PNG are
//! also written for masks and visualizations.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Single- or multi-channel float raster. `data.len() == width*height*channels`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageF32 {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub data: Vec<f32>,
}

impl ImageF32 {
    pub fn new(width: usize, height: usize, channels: usize) -> Self {
        Self {
            width,
            height,
            channels,
            data: vec![0.0; width * height * channels],
        }
    }

    pub fn from_vec(width: usize, height: usize, channels: usize, data: Vec<f32>) -> Result<Self> {
        if data.len() != width * height * channels {
            return Err(Error::DimensionMismatch(format!(
                "image data length {} != {}x{}x{}",
                data.len(),
                width,
                height,
                channels
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    #[inline]
    pub fn idx(&self, u: usize, v: usize, c: usize) -> usize {
        (v * self.width + u) * self.channels + c
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize, c: usize) -> f32 {
        self.data[self.idx(u, v, c)]
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize, c: usize, value: f32) {
        let i = self.idx(u, v, c);
        self.data[i] = value;
    }

    /// Bilinear interpolation of the 4 neighbors, one value per channel.
    /// Coordinates outside `[0,w-1]x[0,h-1]` are clamped to the border first,
    /// so this is a total function.
    pub fn bilinear_sample(&self, u: f32, v: f32, out: &mut [f32]) {
        debug_assert_eq!(out.len(), self.channels);
        let u = u.clamp(0.0, (self.width - 1) as f32);
        let v = v.clamp(0.0, (self.height - 1) as f32);
        let u0 = u.floor() as usize;
        let v0 = v.floor() as usize;
        let u1 = (u0 + 1).min(self.width - 1);
        let v1 = (v0 + 1).min(self.height - 1);
        let fu = u - u0 as f32;
        let fv = v - v0 as f32;
        for c in 0..self.channels {
            let p00 = self.get(u0, v0, c);
            let p10 = self.get(u1, v0, c);
            let p01 = self.get(u0, v1, c);
            let p11 = self.get(u1, v1, c);
            let top = p00 + fu * (p10 - p00);
            let bot = p01 + fu * (p11 - p01);
            out[c] = top + fv * (bot - top);
        }
    }

    /// Single-channel convenience wrapper around [`Self::bilinear_sample`].
    pub fn sample1(&self, u: f32, v: f32) -> f32 {
        debug_assert_eq!(self.channels, 1);
        let mut out = [0.0f32];
        self.bilinear_sample(u, v, &mut out);
        out[0]
    }
}

/// Multi-resolution pyramid; level 0 is full resolution, each level floors
/// the previous dimensions in half.
#[derive(Debug, Clone)]
pub struct Pyramid {
    pub levels: Vec<ImageF32>,
}

/// 2x2 area average; trailing odd rows/columns are dropped so block means
/// stay unbiased.
pub fn downsample_half(img: &ImageF32) -> Result<ImageF32> {
    if img.width < 2 || img.height < 2 {
        return Err(Error::InvalidArgument(format!(
            "image {}x{} too small to downsample",
            img.width, img.height
        )));
    }
    let w = img.width / 2;
    let h = img.height / 2;
    let c = img.channels;
    let mut out = ImageF32::new(w, h, c);
    for y in 0..h {
        for x in 0..w {
            for ch in 0..c {
                let s = img.get(2 * x, 2 * y, ch)
                    + img.get(2 * x + 1, 2 * y, ch)
                    + img.get(2 * x, 2 * y + 1, ch)
                    + img.get(2 * x + 1, 2 * y + 1, ch);
                out.set(x, y, ch, s * 0.25);
            }
        }
    }
    Ok(out)
}

/// Build `levels` pyramid levels. The coarsest level must stay at least 8x8.
pub fn build_pyramid(img: &ImageF32, levels: usize) -> Result<Pyramid> {
    if levels < 1 {
        return Err(Error::InvalidArgument("pyramid needs >= 1 level".into()));
    }
    let (mut w, mut h) = (img.width, img.height);
    for _ in 1..levels {
        w /= 2;
        h /= 2;
    }
    if w < 8 || h < 8 {
        return Err(Error::InvalidArgument(format!(
            "{} pyramid levels too deep for {}x{} image (coarsest {}x{})",
            levels, img.width, img.height, w, h
        )));
    }
    let mut out = Vec::with_capacity(levels);
    out.push(img.clone());
    for i in 1..levels {
        let next = downsample_half(&out[i - 1])?;
        out.push(next);
    }
    Ok(Pyramid { levels: out })
}

// ---------------------------------------------------------------------------
// File IO
// ---------------------------------------------------------------------------

/// Load PGM (8/16-bit gray), PNG (8-bit gray/RGB), or PFM (float, 1/3 ch).
/// Integer formats are scaled to `[0,1]`; PFM values pass through unchanged
/// with rows normalized to top-down order.
pub fn load_image(path: &Path) -> Result<ImageF32> {
    let mut file = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 2];
    file.read_exact(&mut magic)?;
    let mut rest = Vec::new();
    file.read_to_end(&mut rest)?;
    match &magic {
        b"P5" => load_pgm(path, &rest),
        b"Pf" | b"PF" => load_pfm(path, magic[1] == b'F', &rest),
        [0x89, b'P'] => load_png(path),
        _ => Err(Error::UnsupportedFormat(format!(
            "{}: unknown magic {:?}",
            path.display(),
            magic
        ))),
    }
}

fn load_png(path: &Path) -> Result<ImageF32> {
    let dyn_img = image::open(path).map_err(|e| Error::Codec(e.to_string()))?;
    match dyn_img {
        image::DynamicImage::ImageLuma8(img) => {
            let (w, h) = (img.width() as usize, img.height() as usize);
            let data = img.into_raw().iter().map(|&p| p as f32 / 255.0).collect();
            ImageF32::from_vec(w, h, 1, data)
        }
        image::DynamicImage::ImageRgb8(img) => {
            let (w, h) = (img.width() as usize, img.height() as usize);
            let data = img.into_raw().iter().map(|&p| p as f32 / 255.0).collect();
            ImageF32::from_vec(w, h, 3, data)
        }
        other => Err(Error::UnsupportedFormat(format!(
            "{}: PNG color type {:?} (only 8-bit gray/RGB)",
            path.display(),
            other.color()
        ))),
    }
}

/// Pull the next whitespace-delimited token, skipping `#` comment lines.
fn next_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Option<&'a [u8]> {
    while *pos < bytes.len() {
        let b = bytes[*pos];
        if b == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
        } else if b.is_ascii_whitespace() {
            *pos += 1;
        } else {
            break;
        }
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if *pos > start {
        Some(&bytes[start..*pos])
    } else {
        None
    }
}

fn parse_token<T: std::str::FromStr>(tok: Option<&[u8]>, path: &Path, what: &str) -> Result<T> {
    tok.and_then(|t| std::str::from_utf8(t).ok())
        .and_then(|s| s.parse::<T>().ok())
        .ok_or_else(|| Error::HeaderMismatch {
            path: path.to_path_buf(),
            detail: format!("bad or missing {what}"),
        })
}

fn load_pgm(path: &Path, rest: &[u8]) -> Result<ImageF32> {
    let mut pos = 0usize;
    let w: usize = parse_token(next_token(rest, &mut pos), path, "width")?;
    let h: usize = parse_token(next_token(rest, &mut pos), path, "height")?;
    let maxval: u32 = parse_token(next_token(rest, &mut pos), path, "maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::HeaderMismatch {
            path: path.to_path_buf(),
            detail: format!("maxval {maxval} out of range"),
        });
    }
    pos += 1; // single whitespace byte after maxval
    let wide = maxval > 255;
    let bpp = if wide { 2 } else { 1 };
    let need = w * h * bpp;
    let payload = rest.get(pos..).unwrap_or(&[]);
    if payload.len() < need {
        return Err(Error::TruncatedFile {
            path: path.to_path_buf(),
            expected: need,
            got: payload.len(),
        });
    }
    let scale = 1.0 / maxval as f32;
    let data: Vec<f32> = if wide {
        payload[..need]
            .chunks_exact(2)
            .map(|b| u16::from_be_bytes([b[0], b[1]]) as f32 * scale)
            .collect()
    } else {
        payload[..need].iter().map(|&b| b as f32 * scale).collect()
    };
    ImageF32::from_vec(w, h, 1, data)
}

fn load_pfm(path: &Path, color: bool, rest: &[u8]) -> Result<ImageF32> {
    let mut pos = 0usize;
    let w: usize = parse_token(next_token(rest, &mut pos), path, "width")?;
    let h: usize = parse_token(next_token(rest, &mut pos), path, "height")?;
    let scale: f32 = parse_token(next_token(rest, &mut pos), path, "scale")?;
    pos += 1; // single whitespace byte before payload
    let channels = if color { 3 } else { 1 };
    let need = w * h * channels * 4;
    let payload = rest.get(pos..).unwrap_or(&[]);
    if payload.len() < need {
        return Err(Error::TruncatedFile {
            path: path.to_path_buf(),
            expected: need,
            got: payload.len(),
        });
    }
    let little_endian = scale < 0.0;
    // PFM payload rows run bottom-to-top; flip to top-down in memory. The
    // scale magnitude is metadata only, values pass through unchanged.
    let mut data = vec![0.0f32; w * h * channels];
    let row_bytes = w * channels * 4;
    for file_row in 0..h {
        let img_row = h - 1 - file_row;
        let src = &payload[file_row * row_bytes..(file_row + 1) * row_bytes];
        let dst = &mut data[img_row * w * channels..(img_row + 1) * w * channels];
        for (i, b) in src.chunks_exact(4).enumerate() {
            let raw = [b[0], b[1], b[2], b[3]];
            dst[i] = if little_endian {
                f32::from_le_bytes(raw)
            } else {
                f32::from_be_bytes(raw)
            };
        }
    }
    ImageF32::from_vec(w, h, channels, data)
}

/// Write a 1- or 3-channel image as PFM (little-endian, bottom-up rows).
/// `load_image(save_pfm(x)) == x` bitwise.
pub fn save_pfm(img: &ImageF32, path: &Path) -> Result<()> {
    if img.channels != 1 && img.channels != 3 {
        return Err(Error::InvalidArgument(format!(
            "PFM supports 1 or 3 channels, got {}",
            img.channels
        )));
    }
    let mut file = BufWriter::new(File::create(path)?);
    let magic = if img.channels == 3 { "PF" } else { "Pf" };
    write!(file, "{}\n{} {}\n-1.0\n", magic, img.width, img.height)?;
    let row_len = img.width * img.channels;
    for file_row in 0..img.height {
        let img_row = img.height - 1 - file_row;
        let row = &img.data[img_row * row_len..(img_row + 1) * row_len];
        for &v in row {
            file.write_all(&v.to_le_bytes())?;
        }
    }
    file.flush()?;
    Ok(())
}

/// Write an 8-bit binary PGM. Values are clamped to `[0,1]` and scaled by 255.
pub fn save_pgm(img: &ImageF32, path: &Path) -> Result<()> {
    if img.channels != 1 {
        return Err(Error::InvalidArgument(
            "PGM output requires a single channel".into(),
        ));
    }
    let mut file = BufWriter::new(File::create(path)?);
    write!(file, "P5\n{} {}\n255\n", img.width, img.height)?;
    let bytes: Vec<u8> = img
        .data
        .iter()
        .map(|&v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
        .collect();
    file.write_all(&bytes)?;
    file.flush()?;
    Ok(())
}

/// Write an RGB8 PNG from interleaved bytes.
pub fn save_png_rgb8(width: usize, height: usize, rgb: &[u8], path: &Path) -> Result<()> {
    debug_assert_eq!(rgb.len(), width * height * 3);
    let buf: image::RgbImage =
        image::ImageBuffer::from_raw(width as u32, height as u32, rgb.to_vec())
            .ok_or_else(|| Error::Codec("PNG buffer size mismatch".into()))?;
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| Error::Codec(e.to_string()))
}

// ---------------------------------------------------------------------------
// Disparity colormap
// ---------------------------------------------------------------------------

/// Fixed 256-entry pseudo-color map for disparity visualization (index 0 =
/// near black/blue, 255 = dark red). The full table is listed in
/// docs/COLORMAP.md; regenerate it with `cargo run --example colormap_table`.
pub fn colormap_entry(i: u8) -> [u8; 3] {
    // Piecewise-linear "jet" ramp over four segments.
    let t = i as f32 / 255.0;
    let r = (1.5 - (4.0 * t - 3.0).abs()).clamp(0.0, 1.0);
    let g = (1.5 - (4.0 * t - 2.0).abs()).clamp(0.0, 1.0);
    let b = (1.5 - (4.0 * t - 1.0).abs()).clamp(0.0, 1.0);
    [
        (r * 255.0).round() as u8,
        (g * 255.0).round() as u8,
        (b * 255.0).round() as u8,
    ]
}

/// Render a disparity map to a pseudo-colored PNG; invalid pixels are black.
pub fn colorize_disparity(
    values: &[f32],
    valid: &[bool],
    width: usize,
    height: usize,
    d_max: f32,
    path: &Path,
) -> Result<()> {
    if d_max <= 0.0 {
        return Err(Error::InvalidArgument("d_max must be > 0".into()));
    }
    if values.len() != width * height || valid.len() != values.len() {
        return Err(Error::DimensionMismatch(
            "colorize_disparity buffer sizes".into(),
        ));
    }
    let mut rgb = vec![0u8; width * height * 3];
    for (i, (&v, &ok)) in values.iter().zip(valid.iter()).enumerate() {
        if ok {
            let idx = ((v / d_max).clamp(0.0, 1.0) * 255.0).round() as u8;
            let c = colormap_entry(idx);
            rgb[3 * i..3 * i + 3].copy_from_slice(&c);
        }
    }
    save_png_rgb8(width, height, &rgb, path)
}
