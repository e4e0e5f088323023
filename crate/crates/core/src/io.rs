//! Loading and saving grayscale images (PNG, TIFF, PGM).

use std::io::{Cursor, Write};
use std::path::{Path, PathBuf};

use image::{DynamicImage, ImageBuffer, ImageFormat, ImageReader, Luma};

use crate::error::{Error, Result};
use crate::gray::{clamp_value, GrayImage, MAX_INTENSITY};

/// Sample depth of an image file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PixelDepth {
    #[default]
    Eight,
    Sixteen,
}

impl PixelDepth {
    fn max_sample(self) -> f64 {
        match self {
            PixelDepth::Eight => 255.0,
            PixelDepth::Sixteen => 65535.0,
        }
    }
}

const LUMA_WEIGHTS: [f64; 3] = [0.299, 0.587, 0.114];

fn luminance(r: f64, g: f64, b: f64) -> f64 {
    // Gray input must pass through untouched.
    if r == g && g == b {
        r
    } else {
        LUMA_WEIGHTS[0] * r + LUMA_WEIGHTS[1] * g + LUMA_WEIGHTS[2] * b
    }
}

fn format_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn map_image_error(path: &Path, err: image::ImageError) -> Error {
    match err {
        image::ImageError::IoError(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => format_error(path, other.to_string()),
    }
}

/// Loads an image as grayscale. See [`load_image_with_depth`].
pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    load_image_with_depth(path).map(|(img, _)| img)
}

/// Loads an image and reports the sample depth of the source file.
///
/// Color inputs are reduced to Rec. 601 luminance, alpha is dropped, and
/// 16-bit samples are rescaled by 255/65535 into the working range.
pub fn load_image_with_depth(path: impl AsRef<Path>) -> Result<(GrayImage, PixelDepth)> {
    let path = path.as_ref();
    let reader = ImageReader::open(path)
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?
        .with_guessed_format()
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
    if reader.format().is_none() {
        return Err(format_error(path, "unrecognized image format"));
    }
    let decoded = reader.decode().map_err(|e| map_image_error(path, e))?;
    let (width, height) = (decoded.width() as usize, decoded.height() as usize);
    if width == 0 || height == 0 {
        return Err(format_error(path, "image has zero width or height"));
    }

    let scale8 = |v: u8| v as f64;
    let scale16 = |v: u16| v as f64 * MAX_INTENSITY / 65535.0;
    let (pixels, depth): (Vec<f64>, PixelDepth) = match &decoded {
        DynamicImage::ImageLuma8(buf) => {
            (buf.iter().map(|&v| scale8(v)).collect(), PixelDepth::Eight)
        }
        DynamicImage::ImageLumaA8(buf) => (
            buf.pixels().map(|p| scale8(p.0[0])).collect(),
            PixelDepth::Eight,
        ),
        DynamicImage::ImageRgb8(buf) => (
            buf.pixels()
                .map(|p| luminance(scale8(p.0[0]), scale8(p.0[1]), scale8(p.0[2])))
                .collect(),
            PixelDepth::Eight,
        ),
        DynamicImage::ImageRgba8(buf) => (
            buf.pixels()
                .map(|p| luminance(scale8(p.0[0]), scale8(p.0[1]), scale8(p.0[2])))
                .collect(),
            PixelDepth::Eight,
        ),
        DynamicImage::ImageLuma16(buf) => (
            buf.iter().map(|&v| scale16(v)).collect(),
            PixelDepth::Sixteen,
        ),
        DynamicImage::ImageLumaA16(buf) => (
            buf.pixels().map(|p| scale16(p.0[0])).collect(),
            PixelDepth::Sixteen,
        ),
        DynamicImage::ImageRgb16(buf) => (
            buf.pixels()
                .map(|p| luminance(scale16(p.0[0]), scale16(p.0[1]), scale16(p.0[2])))
                .collect(),
            PixelDepth::Sixteen,
        ),
        DynamicImage::ImageRgba16(buf) => (
            buf.pixels()
                .map(|p| luminance(scale16(p.0[0]), scale16(p.0[1]), scale16(p.0[2])))
                .collect(),
            PixelDepth::Sixteen,
        ),
        other => {
            // Float and any future layouts: go through 16-bit RGB.
            let buf = other.to_rgb16();
            (
                buf.pixels()
                    .map(|p| luminance(scale16(p.0[0]), scale16(p.0[1]), scale16(p.0[2])))
                    .collect(),
                PixelDepth::Sixteen,
            )
        }
    };
    // Luminance of in-range channels can drift past 255 by an ulp.
    let pixels = pixels.into_iter().map(clamp_value).collect();
    Ok((GrayImage::from_raw(width, height, pixels), depth))
}

fn format_for(path: &Path) -> Result<ImageFormat> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    match ext.as_str() {
        "png" => Ok(ImageFormat::Png),
        "tif" | "tiff" => Ok(ImageFormat::Tiff),
        "pgm" | "pnm" => Ok(ImageFormat::Pnm),
        _ => Err(Error::InvalidArgument(format!(
            "cannot infer an output format from {}; use .png, .tif/.tiff or .pgm",
            path.display()
        ))),
    }
}

fn quantize(v: f64, depth: PixelDepth) -> f64 {
    (v * depth.max_sample() / MAX_INTENSITY).round()
}

/// Writes `img` at the requested depth; the format follows the file extension.
///
/// Goes through [`write_atomic`], so the destination is never left truncated.
pub fn save_image(img: &GrayImage, path: impl AsRef<Path>, depth: PixelDepth) -> Result<()> {
    let path = path.as_ref();
    let format = format_for(path)?;
    let (w, h) = (img.width() as u32, img.height() as u32);
    let encoded = match depth {
        PixelDepth::Eight => {
            let raw: Vec<u8> = img
                .pixels()
                .iter()
                .map(|&v| quantize(v, depth) as u8)
                .collect();
            DynamicImage::ImageLuma8(
                ImageBuffer::<Luma<u8>, _>::from_raw(w, h, raw).expect("buffer sized to image"),
            )
        }
        PixelDepth::Sixteen => {
            let raw: Vec<u16> = img
                .pixels()
                .iter()
                .map(|&v| quantize(v, depth) as u16)
                .collect();
            DynamicImage::ImageLuma16(
                ImageBuffer::<Luma<u16>, _>::from_raw(w, h, raw).expect("buffer sized to image"),
            )
        }
    };

    let mut bytes = Vec::new();
    encoded
        .write_to(&mut Cursor::new(&mut bytes), format)
        .map_err(|e| map_image_error(path, e))?;
    write_atomic(path, &bytes)
}

/// Writes `bytes` to a temporary file next to `path` and renames it into place.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&parent).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn tmpdir() -> tempfile::TempDir {
        tempfile::tempdir().unwrap()
    }

    #[test]
    fn minimal_ascii_pgm() {
        let dir = tmpdir();
        let p = dir.path().join("one.pgm");
        fs::write(&p, "P2\n1 1\n255\n0\n").unwrap();
        let (img, depth) = load_image_with_depth(&p).unwrap();
        assert_eq!(img, GrayImage::new(1, 1, vec![0.0]).unwrap());
        assert_eq!(depth, PixelDepth::Eight);
    }

    #[test]
    fn sixteen_bit_pgm_rescaled() {
        let dir = tmpdir();
        let p = dir.path().join("w.pgm");
        let mut bytes = b"P5\n2 1\n65535\n".to_vec();
        bytes.extend_from_slice(&[0xff, 0xff, 0x00, 0x00]);
        fs::write(&p, bytes).unwrap();
        let (img, depth) = load_image_with_depth(&p).unwrap();
        assert_eq!(img.pixels(), &[255.0, 0.0]);
        assert_eq!(depth, PixelDepth::Sixteen);
    }

    #[test]
    fn saturated_png() {
        let dir = tmpdir();
        let p = dir.path().join("white.png");
        let img = GrayImage::filled(4, 3, 255.0).unwrap();
        save_image(&img, &p, PixelDepth::Eight).unwrap();
        assert_eq!(load_image(&p).unwrap(), img);
    }

    #[test]
    fn ramp_round_trip_all_formats() {
        let dir = tmpdir();
        let img = GrayImage::new(3, 2, vec![0.0, 51.0, 102.0, 153.0, 204.0, 255.0]).unwrap();
        for name in ["r.png", "r.tif", "r.pgm"] {
            let p = dir.path().join(name);
            save_image(&img, &p, PixelDepth::Eight).unwrap();
            assert_eq!(load_image(&p).unwrap(), img, "{name}");
        }
    }

    #[test]
    fn rgb_converted_to_luminance() {
        let dir = tmpdir();
        let p = dir.path().join("c.png");
        let buf = image::RgbImage::from_raw(3, 1, vec![255, 0, 0, 0, 255, 0, 90, 90, 90]).unwrap();
        buf.save(&p).unwrap();
        let img = load_image(&p).unwrap();
        assert!((img.get(0, 0) - 0.299 * 255.0).abs() < 1e-12);
        assert!((img.get(1, 0) - 0.587 * 255.0).abs() < 1e-12);
        assert_eq!(img.get(2, 0), 90.0);
    }

    #[test]
    fn missing_file_is_io_error() {
        let dir = tmpdir();
        let err = load_image(dir.path().join("nope.png")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }), "{err}");
    }

    #[test]
    fn garbage_is_format_error() {
        let dir = tmpdir();
        let p = dir.path().join("junk.png");
        fs::write(&p, b"definitely not an image").unwrap();
        let err = load_image(&p).unwrap_err();
        assert!(matches!(err, Error::Format { .. }), "{err}");
    }

    #[test]
    fn truncated_png_is_format_error() {
        let dir = tmpdir();
        let p = dir.path().join("t.png");
        save_image(
            &GrayImage::filled(16, 16, 7.0).unwrap(),
            &p,
            PixelDepth::Eight,
        )
        .unwrap();
        let bytes = fs::read(&p).unwrap();
        fs::write(&p, &bytes[..bytes.len() / 2]).unwrap();
        assert!(load_image(&p).is_err());
    }

    #[test]
    fn unknown_extension_rejected() {
        let dir = tmpdir();
        let img = GrayImage::filled(2, 2, 1.0).unwrap();
        assert!(matches!(
            save_image(&img, dir.path().join("x.bmp"), PixelDepth::Eight),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn unwritable_directory_is_io_error() {
        let img = GrayImage::filled(2, 2, 1.0).unwrap();
        let err = save_image(&img, "/nonexistent-dir/x.png", PixelDepth::Eight).unwrap_err();
        assert!(matches!(err, Error::Io { .. }), "{err}");
    }
}
