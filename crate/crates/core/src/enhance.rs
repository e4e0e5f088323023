//! Top-hat, bottom-hat and the combined contrast enhancement
//! `A + (A - open(A)) - (close(A) - A)`.

use crate::gray::{clamp_to_range, GrayImage};
use crate::morphology::{close, open, DiskSE};

/// Every intermediate image of one enhancement run.
#[derive(Debug, Clone, PartialEq)]
pub struct EnhanceStages {
    pub original: GrayImage,
    pub tophat: GrayImage,
    pub bottomhat: GrayImage,
    pub enhanced: GrayImage,
}

fn difference(minuend: &GrayImage, subtrahend: &GrayImage) -> GrayImage {
    let pixels = minuend
        .pixels()
        .iter()
        .zip(subtrahend.pixels())
        .map(|(a, b)| a - b)
        .collect();
    GrayImage::from_raw(minuend.width(), minuend.height(), pixels)
}

/// Bright detail narrower than the disk: `img - open(img)`.
pub fn top_hat(img: &GrayImage, se: &DiskSE) -> GrayImage {
    difference(img, &open(img, se))
}

/// Dark detail narrower than the disk: `close(img) - img`.
pub fn bottom_hat(img: &GrayImage, se: &DiskSE) -> GrayImage {
    difference(&close(img, se), img)
}

/// `clamp(img + tophat - bottomhat)`, summed unbounded and clamped once.
pub fn combine(img: &GrayImage, tophat: &GrayImage, bottomhat: &GrayImage) -> GrayImage {
    assert_eq!(img.dimensions(), tophat.dimensions());
    assert_eq!(img.dimensions(), bottomhat.dimensions());
    let sum = img
        .pixels()
        .iter()
        .zip(tophat.pixels())
        .zip(bottomhat.pixels())
        .map(|((a, t), b)| a + t - b)
        .collect();
    clamp_to_range(img.width(), img.height(), sum).expect("dimensions checked above")
}

/// Runs the enhancement at a fixed disk and keeps every stage.
pub fn enhance_fixed(img: &GrayImage, se: &DiskSE) -> EnhanceStages {
    let (tophat, bottomhat) = rayon::join(|| top_hat(img, se), || bottom_hat(img, se));
    let enhanced = combine(img, &tophat, &bottomhat);
    EnhanceStages {
        original: img.clone(),
        tophat,
        bottomhat,
        enhanced,
    }
}
