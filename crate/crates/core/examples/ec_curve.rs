//! Prints the EC of the enhanced image at every radius for the bundled assets.

use morphx::{edge_content, enhance_fixed, make_disk, synth};

fn main() -> morphx::Result<()> {
    for (name, img) in [
        ("dental", synth::dental_like()),
        ("chest", synth::chest_like()),
    ] {
        println!("{name}: original ec {:.4}", edge_content(&img)?);
        for r in (1..=25).step_by(2) {
            let st = enhance_fixed(&img, &make_disk(r));
            println!("  r={r:2} ec={:.4}", edge_content(&st.enhanced)?);
        }
    }
    Ok(())
}
