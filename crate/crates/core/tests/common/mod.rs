#![allow(dead_code)]

use morphx::GrayImage;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random 8-bit-valued image.
pub fn random_u8_image(rng: &mut impl Rng, w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |_, _| rng.random_range(0..=255u8) as f64).unwrap()
}

/// Random real-valued image, including some exact duplicates so ties show up.
pub fn random_real_image(rng: &mut impl Rng, w: usize, h: usize) -> GrayImage {
    let palette: Vec<f64> = (0..6).map(|_| rng.random_range(0.0..=255.0)).collect();
    GrayImage::from_fn(w, h, |_, _| {
        if rng.random_bool(0.3) {
            palette[rng.random_range(0..palette.len())]
        } else {
            rng.random_range(0.0..=255.0)
        }
    })
    .unwrap()
}

pub fn arb_image(max_side: usize) -> impl Strategy<Value = GrayImage> {
    (1..=max_side, 1..=max_side).prop_flat_map(|(w, h)| {
        prop::collection::vec(0u8..=255, w * h).prop_map(move |v| {
            GrayImage::new(w, h, v.into_iter().map(f64::from).collect()).unwrap()
        })
    })
}

pub fn complement(img: &GrayImage) -> GrayImage {
    img.map(|v| 255.0 - v)
}

pub fn asset(name: &str) -> GrayImage {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("assets")
        .join(name);
    morphx::load_image(path).unwrap()
}
