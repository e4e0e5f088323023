//! Times one automatic enhancement on a large synthetic image.

use std::time::Instant;

use morphx::{auto_enhance, GrayImage, SearchConfig};

fn main() -> morphx::Result<()> {
    let side: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2048);
    let img = GrayImage::from_fn(side, side, |x, y| {
        let (u, v) = (x as f64 / 37.0, y as f64 / 53.0);
        128.0 + 60.0 * (u.sin() * v.cos()) + ((x * 31 + y * 17) % 13) as f64
    })?;
    let start = Instant::now();
    let res = auto_enhance(&img, &SearchConfig::default())?;
    println!(
        "{side}x{side}: radius {} over {} radii, ec {:.3} -> {:.3}, {:.2}s",
        res.chosen_radius,
        res.curve.len(),
        res.ec_before,
        res.ec_after,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}
