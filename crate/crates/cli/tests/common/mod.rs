#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use morphx::{load_image, GrayImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn morphx_cmd() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_morphx"));
    cmd.env_remove("MORPHX_JOBS");
    cmd
}

pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    morphx_cmd().args(args).output().expect("spawn morphx")
}

pub fn asset_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/assets")
        .join(name)
}

pub fn asset(name: &str) -> GrayImage {
    load_image(asset_path(name)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_u8_image(rng: &mut impl Rng, w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |_, _| rng.random_range(0..=255u8) as f64).unwrap()
}

/// Smooth blobs plus noise, so the enhancement has structure to work on.
pub fn textured_image(rng: &mut impl Rng, w: usize, h: usize) -> GrayImage {
    let blobs: Vec<(f64, f64, f64, f64)> = (0..6)
        .map(|_| {
            (
                rng.random_range(0.0..w as f64),
                rng.random_range(0.0..h as f64),
                rng.random_range(3.0..12.0),
                rng.random_range(-60.0..60.0),
            )
        })
        .collect();
    GrayImage::from_fn(w, h, |x, y| {
        let mut v = 120.0;
        for &(cx, cy, r, amp) in &blobs {
            let d2 = (x as f64 - cx).powi(2) + (y as f64 - cy).powi(2);
            v += amp * (-d2 / (2.0 * r * r)).exp();
        }
        (v + rng.random_range(-6.0..6.0)).round().clamp(0.0, 255.0)
    })
    .unwrap()
}

pub fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}
