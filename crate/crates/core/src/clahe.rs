//! Contrast-limited adaptive histogram equalization, used as the comparison
//! baseline, and the side-by-side comparison against the morphological method.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gray::{GrayImage, MAX_INTENSITY};
use crate::metrics::{auto_enhance, edge_content, EnhanceResult, SearchConfig};

/// Tile grid, histogram resolution and normalized clip limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClaheParams {
    pub tiles_x: usize,
    pub tiles_y: usize,
    pub bins: usize,
    /// Fraction of a tile's pixel count allowed in a single bin, in `(0, 1]`.
    pub clip_limit: f64,
}

impl Default for ClaheParams {
    fn default() -> Self {
        Self {
            tiles_x: 8,
            tiles_y: 8,
            bins: 128,
            clip_limit: 0.01,
        }
    }
}

impl ClaheParams {
    pub fn validate(&self) -> Result<()> {
        if self.tiles_x < 1 || self.tiles_y < 1 {
            return Err(Error::InvalidArgument(format!(
                "tile grid must be at least 1x1, got {}x{}",
                self.tiles_x, self.tiles_y
            )));
        }
        if self.bins < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 histogram bins, got {}",
                self.bins
            )));
        }
        if !(self.clip_limit > 0.0 && self.clip_limit <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "clip limit must lie in (0, 1], got {}",
                self.clip_limit
            )));
        }
        Ok(())
    }
}

/// Histogram bin of an intensity when `[0, 256)` is split into `bins` equal bins.
#[inline]
pub(crate) fn bin_of(v: f64, bins: usize) -> usize {
    ((v * bins as f64 / 256.0) as usize).min(bins - 1)
}

/// Clips `hist` at `clip` counts per bin and spreads the excess uniformly,
/// repeating until less than one count per bin remains to redistribute.
pub(crate) fn clip_histogram(hist: &mut [f64], clip: f64) {
    let bins = hist.len() as f64;
    for _ in 0..64 {
        let mut excess = 0.0;
        for h in hist.iter_mut() {
            if *h > clip {
                excess += *h - clip;
                *h = clip;
            }
        }
        if excess == 0.0 {
            break;
        }
        let share = excess / bins;
        for h in hist.iter_mut() {
            *h += share;
        }
        if share < 1.0 {
            break;
        }
    }
}

/// Equalization lookup table from a (clipped) histogram of `total` pixels.
pub(crate) fn mapping_from_histogram(hist: &[f64], total: f64) -> Vec<f64> {
    let mut cdf = 0.0;
    hist.iter()
        .map(|&h| {
            cdf += h;
            (MAX_INTENSITY * cdf / total).min(MAX_INTENSITY)
        })
        .collect()
}

/// `[start, end)` bounds of tile `i` of `n` along an axis of `len` pixels.
fn tile_span(i: usize, n: usize, len: usize) -> (usize, usize) {
    (i * len / n, (i + 1) * len / n)
}

/// For coordinate `p`, the two neighboring tile indices and the blend weight
/// toward the second. Outside the outermost centers the nearest tile repeats.
fn neighbors(p: usize, centers: &[f64]) -> (usize, usize, f64) {
    let p = p as f64;
    let last = centers.len() - 1;
    if p <= centers[0] {
        return (0, 0, 0.0);
    }
    if p >= centers[last] {
        return (last, last, 0.0);
    }
    let i = centers.partition_point(|&c| c <= p) - 1;
    let t = (p - centers[i]) / (centers[i + 1] - centers[i]);
    (i, i + 1, t)
}

/// Contrast-limited adaptive histogram equalization with bilinear blending of
/// per-tile mappings.
pub fn clahe(img: &GrayImage, params: &ClaheParams) -> Result<GrayImage> {
    params.validate()?;
    let (w, h) = img.dimensions();
    if w < params.tiles_x || h < params.tiles_y {
        return Err(Error::InvalidArgument(format!(
            "{w}x{h} image is smaller than the {}x{} tile grid",
            params.tiles_x, params.tiles_y
        )));
    }
    let bins = params.bins;
    let px = img.pixels();

    let tiles: Vec<(usize, usize)> = (0..params.tiles_y)
        .flat_map(|ty| (0..params.tiles_x).map(move |tx| (tx, ty)))
        .collect();
    let maps: Vec<Vec<f64>> = tiles
        .par_iter()
        .map(|&(tx, ty)| {
            let (x0, x1) = tile_span(tx, params.tiles_x, w);
            let (y0, y1) = tile_span(ty, params.tiles_y, h);
            let mut hist = vec![0.0; bins];
            for y in y0..y1 {
                for &v in &px[y * w + x0..y * w + x1] {
                    hist[bin_of(v, bins)] += 1.0;
                }
            }
            let total = ((x1 - x0) * (y1 - y0)) as f64;
            // A clip below the uniform level cannot hold every pixel.
            let clip = (params.clip_limit * total).max(total / bins as f64);
            clip_histogram(&mut hist, clip);
            mapping_from_histogram(&hist, total)
        })
        .collect();

    let centers = |n: usize, len: usize| -> Vec<f64> {
        (0..n)
            .map(|i| {
                let (a, b) = tile_span(i, n, len);
                (a + b - 1) as f64 / 2.0
            })
            .collect()
    };
    let cx = centers(params.tiles_x, w);
    let cy = centers(params.tiles_y, h);
    let map_at = |tx: usize, ty: usize| &maps[ty * params.tiles_x + tx];

    let mut out = vec![0.0; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(y, row)| {
        let (ty0, ty1, fy) = neighbors(y, &cy);
        for (x, o) in row.iter_mut().enumerate() {
            let (tx0, tx1, fx) = neighbors(x, &cx);
            let b = bin_of(px[y * w + x], bins);
            let m00 = map_at(tx0, ty0)[b];
            let m10 = map_at(tx1, ty0)[b];
            let m01 = map_at(tx0, ty1)[b];
            let m11 = map_at(tx1, ty1)[b];
            // Difference form stays exact when all four mappings agree.
            let top = m00 + fx * (m10 - m00);
            let bottom = m01 + fx * (m11 - m01);
            *o = (top + fy * (bottom - top)).clamp(0.0, MAX_INTENSITY);
        }
    });
    Ok(GrayImage::from_raw(w, h, out))
}

/// Both pipelines run on the same input, with the EC of every output.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub proposed: EnhanceResult,
    pub clahe_out: GrayImage,
    pub ec_proposed: f64,
    pub ec_clahe: f64,
    pub ec_original: f64,
}

pub fn compare(img: &GrayImage, cfg: &SearchConfig, params: &ClaheParams) -> Result<Comparison> {
    let proposed = auto_enhance(img, cfg)?;
    let clahe_out = clahe(img, params)?;
    let ec_clahe = edge_content(&clahe_out)?;
    Ok(Comparison {
        ec_proposed: proposed.ec_after,
        ec_original: proposed.ec_before,
        ec_clahe,
        proposed,
        clahe_out,
    })
}
