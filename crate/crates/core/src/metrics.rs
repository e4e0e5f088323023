//! Gradient field, Edge Content (EC) and the EC-driven search for the disk
//! radius.
//!
//! EC is the mean gradient magnitude over the whole image. The search sweeps
//! the radius upward, enhancing at each step, and stops once the relative EC
//! gain stays below `plateau_rel_tol` for `plateau_patience` consecutive steps.

use rayon::prelude::*;

use crate::enhance::{enhance_fixed, EnhanceStages};
use crate::error::{Error, Result};
use crate::gray::GrayImage;
use crate::morphology::make_disk;

/// Floor on the denominator of the relative-gain test.
pub const GAIN_EPSILON: f64 = 1e-12;

/// Per-pixel partial derivatives, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    width: usize,
    height: usize,
    gx: Vec<f64>,
    gy: Vec<f64>,
}

impl GradientField {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn gx(&self) -> &[f64] {
        &self.gx
    }

    pub fn gy(&self) -> &[f64] {
        &self.gy
    }

    /// `(gx, gy)` at column `x`, row `y`.
    pub fn at(&self, x: usize, y: usize) -> (f64, f64) {
        let i = y * self.width + x;
        (self.gx[i], self.gy[i])
    }
}

fn require_2x2(img: &GrayImage) -> Result<()> {
    if img.width() < 2 || img.height() < 2 {
        return Err(Error::Dimension(format!(
            "gradient needs at least 2x2 pixels, got {}x{}",
            img.width(),
            img.height()
        )));
    }
    Ok(())
}

/// Derivative along a line of samples at index `i`: central inside, one-sided at the ends.
#[inline]
fn derivative(at: impl Fn(usize) -> f64, i: usize, n: usize) -> f64 {
    if i == 0 {
        at(1) - at(0)
    } else if i == n - 1 {
        at(n - 1) - at(n - 2)
    } else {
        (at(i + 1) - at(i - 1)) / 2.0
    }
}

/// Central differences on interior pixels, one-sided differences on borders.
pub fn gradient_field(img: &GrayImage) -> Result<GradientField> {
    require_2x2(img)?;
    let (w, h) = img.dimensions();
    let px = img.pixels();
    let mut gx = vec![0.0; w * h];
    let mut gy = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            gx[y * w + x] = derivative(|i| px[y * w + i], x, w);
            gy[y * w + x] = derivative(|j| px[j * w + x], y, h);
        }
    }
    Ok(GradientField {
        width: w,
        height: h,
        gx,
        gy,
    })
}

/// Mean gradient magnitude over every pixel of the image.
pub fn edge_content(img: &GrayImage) -> Result<f64> {
    require_2x2(img)?;
    let (w, h) = img.dimensions();
    let px = img.pixels();
    // Row sums are reduced in row order so the result does not depend on the
    // thread count.
    let row_sums: Vec<f64> = (0..h)
        .into_par_iter()
        .map(|y| {
            (0..w)
                .map(|x| {
                    let gx = derivative(|i| px[y * w + i], x, w);
                    let gy = derivative(|j| px[j * w + x], y, h);
                    (gx * gx + gy * gy).sqrt()
                })
                .sum::<f64>()
        })
        .collect();
    Ok(row_sums.iter().sum::<f64>() / (w * h) as f64)
}

/// One point of an EC curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcSample {
    pub radius: usize,
    pub ec: f64,
}

/// EC values at strictly increasing radii.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EcCurve {
    samples: Vec<EcSample>,
}

impl EcCurve {
    pub fn new(samples: Vec<EcSample>) -> Result<Self> {
        if let Some(bad) = samples.iter().find(|s| !s.ec.is_finite() || s.ec < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "EC at radius {} is {}, expected a finite non-negative value",
                bad.radius, bad.ec
            )));
        }
        if samples.windows(2).any(|p| p[1].radius <= p[0].radius) {
            return Err(Error::InvalidArgument(
                "EC curve radii must be strictly increasing".into(),
            ));
        }
        Ok(Self { samples })
    }

    /// Convenience constructor from `(radius, ec)` pairs.
    pub fn from_pairs(pairs: &[(usize, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(radius, ec)| EcSample { radius, ec })
                .collect(),
        )
    }

    pub fn samples(&self) -> &[EcSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn radii(&self) -> impl Iterator<Item = usize> + '_ {
        self.samples.iter().map(|s| s.radius)
    }
}

/// Radius schedule and plateau rule for the automatic search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub r_min: usize,
    pub r_max: usize,
    pub step: usize,
    pub plateau_rel_tol: f64,
    pub plateau_patience: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            r_min: 1,
            r_max: 25,
            step: 2,
            plateau_rel_tol: 0.01,
            plateau_patience: 2,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidArgument(msg));
        if self.r_min < 1 {
            return fail("r_min must be at least 1".into());
        }
        if self.r_max < self.r_min {
            return fail(format!(
                "r_max ({}) must not be below r_min ({})",
                self.r_max, self.r_min
            ));
        }
        if self.step < 1 {
            return fail("step must be at least 1".into());
        }
        if !(self.plateau_rel_tol > 0.0 && self.plateau_rel_tol.is_finite()) {
            return fail(format!(
                "plateau tolerance must be positive, got {}",
                self.plateau_rel_tol
            ));
        }
        if self.plateau_patience < 1 {
            return fail("plateau patience must be at least 1".into());
        }
        Ok(())
    }

    /// The full radius schedule `r_min, r_min + step, ..` up to `r_max`.
    pub fn radii(&self) -> impl Iterator<Item = usize> {
        (self.r_min..=self.r_max).step_by(self.step.max(1))
    }
}

fn relative_gain(from: f64, to: f64) -> f64 {
    (to - from) / from.max(GAIN_EPSILON)
}

/// Index of the first sample followed by `patience` consecutive low-gain steps.
fn plateau_start(samples: &[EcSample], tol: f64, patience: usize) -> Option<usize> {
    (0..samples.len())
        .take_while(|k| k + patience < samples.len())
        .find(|&k| (k..k + patience).all(|j| relative_gain(samples[j].ec, samples[j + 1].ec) < tol))
}

/// Enhances at each scheduled radius and records the EC of the result,
/// stopping at the first plateau or at `r_max`.
pub fn ec_sweep(img: &GrayImage, cfg: &SearchConfig) -> Result<EcCurve> {
    cfg.validate()?;
    require_2x2(img)?;
    let mut samples = Vec::new();
    for radius in cfg.radii() {
        let stages = enhance_fixed(img, &make_disk(radius));
        samples.push(EcSample {
            radius,
            ec: edge_content(&stages.enhanced)?,
        });
        if plateau_start(&samples, cfg.plateau_rel_tol, cfg.plateau_patience).is_some() {
            break;
        }
    }
    EcCurve::new(samples)
}

/// Picks the plateau radius of `curve`, or the radius with the largest EC
/// (smallest radius on ties) when the curve never levels off.
pub fn select_se(curve: &EcCurve, cfg: &SearchConfig) -> Result<usize> {
    let samples = curve.samples();
    if samples.is_empty() {
        return Err(Error::InvalidArgument("EC curve is empty".into()));
    }
    if let Some(k) = plateau_start(samples, cfg.plateau_rel_tol, cfg.plateau_patience) {
        return Ok(samples[k].radius);
    }
    let best = samples
        .iter()
        .fold(samples[0], |best, s| if s.ec > best.ec { *s } else { best });
    Ok(best.radius)
}

/// Outcome of [`auto_enhance`].
#[derive(Debug, Clone, PartialEq)]
pub struct EnhanceResult {
    pub stages: EnhanceStages,
    pub chosen_radius: usize,
    pub curve: EcCurve,
    pub ec_before: f64,
    pub ec_after: f64,
}

/// Sweeps radii, selects the plateau radius and enhances with it.
pub fn auto_enhance(img: &GrayImage, cfg: &SearchConfig) -> Result<EnhanceResult> {
    let curve = ec_sweep(img, cfg)?;
    let chosen_radius = select_se(&curve, cfg)?;
    let stages = enhance_fixed(img, &make_disk(chosen_radius));
    let ec_before = edge_content(img)?;
    let ec_after = edge_content(&stages.enhanced)?;
    Ok(EnhanceResult {
        stages,
        chosen_radius,
        curve,
        ec_before,
        ec_after,
    })
}
