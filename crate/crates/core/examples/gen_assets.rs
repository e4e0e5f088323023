//! Regenerates the bundled synthetic test images.

use std::path::PathBuf;

use morphx::{save_image, synth, PixelDepth};

fn main() -> morphx::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("assets");
    std::fs::create_dir_all(&dir).map_err(|source| morphx::Error::Io {
        path: dir.clone(),
        source,
    })?;
    for (name, img) in [
        ("dental_like.png", synth::dental_like()),
        ("chest_like.png", synth::chest_like()),
    ] {
        let path = dir.join(name);
        save_image(&img, &path, PixelDepth::Eight)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
