//! Directory-wide auto-enhancement with a CSV report.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use morphx::io::write_atomic;
use morphx::{
    auto_enhance, clahe, edge_content, load_image_with_depth, save_image, ClaheParams, SearchConfig,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::CliError;

pub const IMAGE_EXTENSIONS: [&str; 4] = ["png", "tif", "tiff", "pgm"];

#[derive(Debug, Clone)]
pub struct BatchOptions {
    pub input_dir: PathBuf,
    pub output_dir: PathBuf,
    pub report: PathBuf,
    pub jobs: usize,
    pub clahe: Option<ClaheParams>,
    pub recursive: bool,
    pub search: SearchConfig,
}

/// One CSV line. Column order is part of the output contract.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchReportRow {
    pub path: String,
    pub width: usize,
    pub height: usize,
    pub chosen_radius: usize,
    pub ec_original: f64,
    pub ec_enhanced: f64,
    pub ec_clahe: Option<f64>,
    pub wall_ms: f64,
}

fn has_image_extension(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

/// Candidate images under `root`, as paths relative to it, sorted.
pub fn collect_inputs(root: &Path, recursive: bool) -> std::io::Result<Vec<PathBuf>> {
    let mut found = Vec::new();
    let mut pending = vec![PathBuf::new()];
    while let Some(rel) = pending.pop() {
        for entry in fs::read_dir(root.join(&rel))? {
            let entry = entry?;
            let file_type = entry.file_type()?;
            let child = rel.join(entry.file_name());
            if file_type.is_dir() {
                if recursive {
                    pending.push(child);
                }
            } else if has_image_extension(&child) {
                found.push(child);
            }
        }
    }
    found.sort();
    Ok(found)
}

fn display_path(rel: &Path) -> String {
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

fn process_one(opts: &BatchOptions, rel: &Path) -> morphx::Result<BatchReportRow> {
    let started = Instant::now();
    let (img, depth) = load_image_with_depth(opts.input_dir.join(rel))?;
    let res = auto_enhance(&img, &opts.search)?;
    let ec_clahe = match &opts.clahe {
        Some(params) => Some(edge_content(&clahe(&img, params)?)?),
        None => None,
    };
    let dest = opts.output_dir.join(rel);
    if let Some(parent) = dest.parent() {
        fs::create_dir_all(parent).map_err(|source| morphx::Error::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    save_image(&res.stages.enhanced, &dest, depth)?;
    Ok(BatchReportRow {
        path: display_path(rel),
        width: img.width(),
        height: img.height(),
        chosen_radius: res.chosen_radius,
        ec_original: res.ec_before,
        ec_enhanced: res.ec_after,
        ec_clahe,
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn report_csv(rows: &[BatchReportRow]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record([
            "path",
            "width",
            "height",
            "chosen_radius",
            "ec_original",
            "ec_enhanced",
            "ec_clahe",
            "wall_ms",
        ])?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

pub fn failures_path(report: &Path) -> PathBuf {
    let mut name = report.as_os_str().to_os_string();
    name.push(".failures.txt");
    PathBuf::from(name)
}

pub fn run(opts: &BatchOptions) -> Result<(), CliError> {
    if opts.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let inputs = collect_inputs(&opts.input_dir, opts.recursive)
        .map_err(|e| CliError::Io(format!("cannot list {}: {e}", opts.input_dir.display())))?;
    fs::create_dir_all(&opts.output_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", opts.output_dir.display())))?;
    eprintln!(
        "processing {} image(s) with {} job(s)",
        inputs.len(),
        opts.jobs
    );

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| CliError::Io(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<_> = pool.install(|| {
        inputs
            .par_iter()
            .map(|rel| {
                let outcome = process_one(opts, rel);
                match &outcome {
                    Ok(row) => eprintln!("  {} -> radius {}", row.path, row.chosen_radius),
                    Err(e) => eprintln!("  {} failed: {e}", display_path(rel)),
                }
                (rel, outcome)
            })
            .collect()
    });

    let mut rows = Vec::new();
    let mut failures = String::new();
    let mut failed = 0;
    for (rel, outcome) in outcomes {
        match outcome {
            Ok(row) => rows.push(row),
            Err(e) => {
                failed += 1;
                let _ = writeln!(failures, "{}\t{e}", display_path(rel));
            }
        }
    }

    let csv = report_csv(&rows).map_err(|e| CliError::Io(format!("cannot encode report: {e}")))?;
    write_atomic(&opts.report, &csv)?;
    let failures_file = failures_path(&opts.report);
    if failed > 0 {
        write_atomic(&failures_file, failures.as_bytes())?;
        return Err(CliError::PartialBatch(failed));
    }
    if failures_file.exists() {
        // Stale list from an earlier run.
        let _ = fs::remove_file(&failures_file);
    }
    Ok(())
}
