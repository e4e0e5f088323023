use std::fs;
use std::path::{Path, PathBuf};

use morphx::io::write_atomic;
use morphx::{
    auto_enhance, compare as run_compare, edge_content, enhance_fixed, load_image, make_disk,
    save_image, ClaheParams, EcCurve, PixelDepth, SearchConfig,
};
use serde::Serialize;

use crate::CliError;

/// `<dir>/<stem><suffix>.<ext>` next to `path`.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}{suffix}.{ext}"),
        None => format!("{stem}{suffix}"),
    };
    path.with_file_name(name)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain structs serialize")
}

pub(crate) fn curve_csv(curve: &EcCurve) -> String {
    let mut s = String::from("radius,ec\n");
    for sample in curve.samples() {
        s.push_str(&format!("{},{}\n", sample.radius, sample.ec));
    }
    s
}

pub fn enhance(
    input: &Path,
    output: &Path,
    radius: usize,
    dump_stages: bool,
    depth: PixelDepth,
) -> Result<(), CliError> {
    let img = load_image(input)?;
    let stages = enhance_fixed(&img, &make_disk(radius));
    save_image(&stages.enhanced, output, depth)?;
    if dump_stages {
        save_image(&stages.tophat, sibling(output, "_tophat"), depth)?;
        save_image(&stages.bottomhat, sibling(output, "_bottomhat"), depth)?;
    }
    eprintln!("enhanced {} with radius {radius}", input.display());
    Ok(())
}

#[derive(Serialize)]
struct AutoReport {
    chosen_radius: usize,
    ec_before: f64,
    ec_after: f64,
}

pub fn auto(
    input: &Path,
    output: &Path,
    cfg: &SearchConfig,
    emit_curve: Option<&Path>,
    depth: PixelDepth,
) -> Result<(), CliError> {
    let img = load_image(input)?;
    let res = auto_enhance(&img, cfg)?;
    save_image(&res.stages.enhanced, output, depth)?;
    if let Some(path) = emit_curve {
        write_atomic(path, curve_csv(&res.curve).as_bytes())?;
    }
    println!(
        "{}",
        to_json(&AutoReport {
            chosen_radius: res.chosen_radius,
            ec_before: res.ec_before,
            ec_after: res.ec_after,
        })
    );
    Ok(())
}

#[derive(Serialize)]
struct CompareReport {
    chosen_radius: usize,
    ec_original: f64,
    ec_proposed: f64,
    ec_clahe: f64,
    clahe_tiles_x: usize,
    clahe_tiles_y: usize,
    clahe_bins: usize,
    clahe_clip_limit: f64,
}

pub fn compare(
    input: &Path,
    outdir: &Path,
    cfg: &SearchConfig,
    params: &ClaheParams,
) -> Result<(), CliError> {
    let img = load_image(input)?;
    let cmp = run_compare(&img, cfg, params)?;
    fs::create_dir_all(outdir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", outdir.display())))?;
    save_image(&img, outdir.join("original.png"), PixelDepth::Eight)?;
    save_image(
        &cmp.proposed.stages.enhanced,
        outdir.join("proposed.png"),
        PixelDepth::Eight,
    )?;
    save_image(&cmp.clahe_out, outdir.join("clahe.png"), PixelDepth::Eight)?;
    let report = to_json(&CompareReport {
        chosen_radius: cmp.proposed.chosen_radius,
        ec_original: cmp.ec_original,
        ec_proposed: cmp.ec_proposed,
        ec_clahe: cmp.ec_clahe,
        clahe_tiles_x: params.tiles_x,
        clahe_tiles_y: params.tiles_y,
        clahe_bins: params.bins,
        clahe_clip_limit: params.clip_limit,
    });
    write_atomic(
        outdir.join("metrics.json"),
        format!("{report}\n").as_bytes(),
    )?;
    println!("{report}");
    Ok(())
}

pub fn metrics(input: &Path) -> Result<(), CliError> {
    let img = load_image(input)?;
    #[derive(Serialize)]
    struct Ec {
        ec: f64,
    }
    println!(
        "{}",
        to_json(&Ec {
            ec: edge_content(&img)?
        })
    );
    Ok(())
}
