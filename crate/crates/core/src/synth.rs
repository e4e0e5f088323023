//! Deterministic synthetic radiograph analogs used as bundled test assets.
//!
//! Both generators are pure functions of pixel coordinates plus a fixed-seed
//! integer hash, and round to integer intensities, so the PNGs under
//! `crates/core/assets/` can be regenerated bit-exactly with
//! `cargo run -p morphx --example gen_assets`.

use crate::gray::GrayImage;

pub const DENTAL_SIZE: (usize, usize) = (192, 160);
pub const CHEST_SIZE: (usize, usize) = (192, 192);

/// splitmix64 finalizer over the pixel coordinates, mapped to `[-1, 1)`.
fn hash_noise(x: usize, y: usize, seed: u64) -> f64 {
    let mut z = seed
        .wrapping_add((x as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add((y as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 52) as f64 - 1.0
}

fn smoothstep(edge0: f64, edge1: f64, v: f64) -> f64 {
    let t = ((v - edge0) / (edge1 - edge0)).clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

fn finish(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> GrayImage {
    GrayImage::from_fn(width, height, |x, y| f(x, y).round().clamp(0.0, 255.0))
        .expect("generator dimensions are non-zero")
}

/// A row of teeth: bright tapered crowns and roots about 26 px wide with a
/// dark pulp canal, separated by narrow dark gaps, over a soft vertical
/// shading. Low contrast with mild noise.
pub fn dental_like() -> GrayImage {
    let (w, h) = DENTAL_SIZE;
    let pitch = 32.0;
    finish(w, h, |x, y| {
        let (xf, yf) = (x as f64, y as f64);
        let v = yf / h as f64;
        // Crowns are widest near the top third; roots taper toward the bottom.
        let half_width = 13.0 * (1.0 - 0.55 * smoothstep(0.35, 1.0, v));
        let local = (xf + 6.0).rem_euclid(pitch) - pitch / 2.0;
        let body = 1.0 - smoothstep(half_width - 1.5, half_width + 1.5, local.abs());
        let enamel = body * (1.0 - smoothstep(0.25, 0.4, v)) * 10.0;
        let pulp = (1.0 - smoothstep(1.5, 3.0, local.abs())) * smoothstep(0.2, 0.3, v) * 14.0;
        let jaw = 8.0 * smoothstep(0.55, 1.0, v);
        let base = 88.0 + 10.0 * (std::f64::consts::PI * v).sin() + jaw;
        base + body * (34.0 - pulp) + enamel + 3.0 * hash_noise(x, y, 0x0D3A)
    })
}

/// A chest-like radiograph: broad low-frequency shading with two darker lung
/// fields, a bright mediastinum, rib arcs as superimposed texture, and noise.
pub fn chest_like() -> GrayImage {
    let (w, h) = CHEST_SIZE;
    finish(w, h, |x, y| {
        let u = x as f64 / (w - 1) as f64 * 2.0 - 1.0;
        let v = y as f64 / (h - 1) as f64 * 2.0 - 1.0;
        let vignette = 1.0 - 0.35 * (u * u + v * v);
        let lung = |cx: f64| {
            let d = ((u - cx) / 0.38).powi(2) + ((v + 0.05) / 0.7).powi(2);
            1.0 - smoothstep(0.7, 1.0, d)
        };
        let lungs = lung(-0.45).max(lung(0.45));
        let mediastinum = 1.0 - smoothstep(0.12, 0.25, u.abs());
        let ribs = {
            let arc = v * 9.0 + 2.2 * u * u;
            let stripe = (arc * std::f64::consts::PI).sin();
            smoothstep(0.55, 0.85, stripe) * lungs
        };
        let base = 70.0 + 60.0 * vignette - 30.0 * lungs + 25.0 * mediastinum;
        base + 16.0 * ribs + 4.0 * hash_noise(x, y, 0xC4E5)
    })
}
