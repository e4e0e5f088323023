//! Flat grayscale morphology over discrete disk structuring elements.
//!
//! Two kernels compute erosion and dilation: [`Kernel::Naive`] scans every
//! disk offset per pixel and serves as the reference, while [`Kernel::Chord`]
//! decomposes the disk into horizontal chords, runs a van Herk/Gil-Werman
//! running extremum along rows once per distinct chord width, and folds the
//! chord rows together. Both select from the same multiset of samples, so
//! their outputs are bit-identical. Borders use replicate extension.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::gray::GrayImage;

/// Disk structuring element: all `(dx, dy)` with `dx² + dy² <= radius²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskSE {
    radius: usize,
    offsets: Vec<(isize, isize)>,
    /// Half-width of the chord at `dy = i - radius`.
    chords: Vec<usize>,
}

impl DiskSE {
    pub fn new(radius: usize) -> Self {
        let r = radius as isize;
        let r2 = r * r;
        let mut offsets = Vec::new();
        let mut chords = Vec::with_capacity(2 * radius + 1);
        for dy in -r..=r {
            let mut half = 0;
            for dx in -r..=r {
                if dx * dx + dy * dy <= r2 {
                    offsets.push((dx, dy));
                    half = half.max(dx.unsigned_abs());
                }
            }
            chords.push(half);
        }
        Self {
            radius,
            offsets,
            chords,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Offsets `(dx, dy)` ordered by row, then column.
    pub fn offsets(&self) -> &[(isize, isize)] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn contains(&self, dx: isize, dy: isize) -> bool {
        self.offsets
            .binary_search_by(|&(ox, oy)| (oy, ox).cmp(&(dy, dx)))
            .is_ok()
    }
}

/// Shorthand for [`DiskSE::new`].
pub fn make_disk(radius: usize) -> DiskSE {
    DiskSE::new(radius)
}

/// Which erosion/dilation implementation to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kernel {
    /// Per-pixel scan over every offset.
    Naive,
    /// Chord decomposition with running extrema.
    #[default]
    Chord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Extremum {
    Min,
    Max,
}

impl Extremum {
    #[inline(always)]
    fn pick(self, a: f64, b: f64) -> f64 {
        match self {
            Extremum::Min => {
                if b < a {
                    b
                } else {
                    a
                }
            }
            Extremum::Max => {
                if b > a {
                    b
                } else {
                    a
                }
            }
        }
    }
}

#[inline(always)]
fn clamp_index(i: isize, len: usize) -> usize {
    i.clamp(0, len as isize - 1) as usize
}

fn naive_filter(img: &GrayImage, se: &DiskSE, op: Extremum) -> GrayImage {
    let (w, h) = img.dimensions();
    let src = img.pixels();
    let mut out = vec![0.0; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(y, row)| {
        for (x, o) in row.iter_mut().enumerate() {
            let mut acc = src[y * w + x];
            for &(dx, dy) in se.offsets() {
                let sx = clamp_index(x as isize + dx, w);
                let sy = clamp_index(y as isize + dy, h);
                acc = op.pick(acc, src[sy * w + sx]);
            }
            *o = acc;
        }
    });
    GrayImage::from_raw(w, h, out)
}

/// Running extremum over `[x - half, x + half]` with replicate borders.
fn running_extremum(
    row: &[f64],
    half: usize,
    op: Extremum,
    out: &mut [f64],
    padded: &mut Vec<f64>,
    prefix: &mut Vec<f64>,
    suffix: &mut Vec<f64>,
) {
    let n = row.len();
    if half == 0 {
        out.copy_from_slice(row);
        return;
    }
    let k = 2 * half + 1;
    let len = n + 2 * half;
    padded.clear();
    padded.extend((0..len).map(|i| row[clamp_index(i as isize - half as isize, n)]));

    prefix.clear();
    prefix.resize(len, 0.0);
    suffix.clear();
    suffix.resize(len, 0.0);
    for i in 0..len {
        prefix[i] = if i % k == 0 {
            padded[i]
        } else {
            op.pick(prefix[i - 1], padded[i])
        };
    }
    for i in (0..len).rev() {
        suffix[i] = if i + 1 == len || (i + 1) % k == 0 {
            padded[i]
        } else {
            op.pick(suffix[i + 1], padded[i])
        };
    }
    for (x, o) in out.iter_mut().enumerate() {
        *o = op.pick(suffix[x], prefix[x + k - 1]);
    }
}

fn chord_filter(img: &GrayImage, se: &DiskSE, op: Extremum) -> GrayImage {
    let (w, h) = img.dimensions();
    if se.radius() == 0 {
        return img.clone();
    }
    let r = se.radius() as isize;

    let mut rows_by_half: BTreeMap<usize, Vec<isize>> = BTreeMap::new();
    for (i, &half) in se.chords.iter().enumerate() {
        rows_by_half.entry(half).or_default().push(i as isize - r);
    }

    let mut out: Vec<f64> = img.pixels().to_vec();
    let mut swept = vec![0.0; w * h];
    for (&half, dys) in &rows_by_half {
        swept.par_chunks_mut(w).enumerate().for_each_init(
            || (Vec::new(), Vec::new(), Vec::new()),
            |(padded, prefix, suffix), (y, dst)| {
                running_extremum(img.row(y), half, op, dst, padded, prefix, suffix)
            },
        );
        let swept = &swept;
        out.par_chunks_mut(w).enumerate().for_each(|(y, dst)| {
            for &dy in dys {
                let sy = clamp_index(y as isize + dy, h);
                let src = &swept[sy * w..(sy + 1) * w];
                for (o, &s) in dst.iter_mut().zip(src) {
                    *o = op.pick(*o, s);
                }
            }
        });
    }
    GrayImage::from_raw(w, h, out)
}

fn filter(img: &GrayImage, se: &DiskSE, op: Extremum, kernel: Kernel) -> GrayImage {
    match kernel {
        Kernel::Naive => naive_filter(img, se, op),
        Kernel::Chord => chord_filter(img, se, op),
    }
}

pub fn erode_with(img: &GrayImage, se: &DiskSE, kernel: Kernel) -> GrayImage {
    filter(img, se, Extremum::Min, kernel)
}

pub fn dilate_with(img: &GrayImage, se: &DiskSE, kernel: Kernel) -> GrayImage {
    filter(img, se, Extremum::Max, kernel)
}

/// Pointwise minimum over the disk neighborhood.
pub fn erode(img: &GrayImage, se: &DiskSE) -> GrayImage {
    erode_with(img, se, Kernel::default())
}

/// Pointwise maximum over the disk neighborhood.
pub fn dilate(img: &GrayImage, se: &DiskSE) -> GrayImage {
    dilate_with(img, se, Kernel::default())
}

/// Erosion followed by dilation. Removes bright structures the disk cannot fit in.
pub fn open(img: &GrayImage, se: &DiskSE) -> GrayImage {
    dilate(&erode(img, se), se)
}

/// Dilation followed by erosion. Fills dark structures the disk cannot fit in.
pub fn close(img: &GrayImage, se: &DiskSE) -> GrayImage {
    erode(&dilate(img, se), se)
}
