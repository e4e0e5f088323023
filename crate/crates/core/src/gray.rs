//! The grayscale pixel container shared by every other module.
//!
//! Intensities are stored as `f64` in the working range `[0, 255]`. Pipelines
//! that need unbounded intermediates (the enhancement sum) work on plain
//! `Vec<f64>` buffers and come back through [`clamp_to_range`].

use crate::error::{Error, Result};

/// Upper end of the working intensity range.
pub const MAX_INTENSITY: f64 = 255.0;

/// Row-major grayscale image with real-valued intensities in `[0, 255]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::Dimension(format!(
            "image must be at least 1x1, got {width}x{height}"
        )));
    }
    if width.checked_mul(height) != Some(len) {
        return Err(Error::Dimension(format!(
            "{len} pixels do not fill a {width}x{height} grid"
        )));
    }
    Ok(())
}

impl GrayImage {
    /// Builds an image from row-major pixels, rejecting values outside `[0, 255]`.
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        if let Some((i, v)) = pixels
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=MAX_INTENSITY).contains(*v))
        {
            return Err(Error::InvalidArgument(format!(
                "pixel {i} has intensity {v} outside [0, 255]"
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width.saturating_mul(height)])
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    /// Caller guarantees the dimension and range invariants.
    pub(crate) fn from_raw(width: usize, height: usize, pixels: Vec<f64>) -> Self {
        debug_assert_eq!(pixels.len(), width * height);
        debug_assert!(pixels.iter().all(|v| (0.0..=MAX_INTENSITY).contains(v)));
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    /// Always false; images hold at least one pixel.
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<f64> {
        self.pixels
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.pixels[y * self.width..(y + 1) * self.width]
    }

    /// Intensity at column `x`, row `y`. Panics when out of bounds.
    pub fn get(&self, x: usize, y: usize) -> f64 {
        assert!(
            x < self.width && y < self.height,
            "({x}, {y}) out of bounds"
        );
        self.pixels[y * self.width + x]
    }

    /// Applies `f` pointwise, clamping the result back into the working range.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> GrayImage {
        let pixels = self.pixels.iter().map(|&v| clamp_value(f(v))).collect();
        Self::from_raw(self.width, self.height, pixels)
    }

    /// True when every pixel of `self` is `<=` the matching pixel of `other`.
    pub fn le_pointwise(&self, other: &GrayImage) -> bool {
        self.dimensions() == other.dimensions()
            && self.pixels.iter().zip(&other.pixels).all(|(a, b)| a <= b)
    }

    pub fn min_value(&self) -> f64 {
        self.pixels.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.pixels
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Clamps a single intensity into `[0, 255]`. NaN maps to 0.
pub fn clamp_value(v: f64) -> f64 {
    if v.is_nan() {
        0.0
    } else {
        v.clamp(0.0, MAX_INTENSITY)
    }
}

/// Replaces every value `v` with `min(255, max(0, v))` and wraps the result as
/// a [`GrayImage`].
pub fn clamp_to_range(width: usize, height: usize, mut values: Vec<f64>) -> Result<GrayImage> {
    check_dims(width, height, values.len())?;
    for v in &mut values {
        *v = clamp_value(*v);
    }
    Ok(GrayImage::from_raw(width, height, values))
}
