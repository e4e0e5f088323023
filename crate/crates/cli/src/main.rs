//! `morphx` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or unreadable image, 2 bad arguments,
//! 3 batch finished with at least one failed image.

mod batch;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use morphx::{ClaheParams, SearchConfig};

#[derive(Parser, Debug)]
#[command(
    name = "morphx",
    version,
    about = "Morphological contrast enhancement for X-ray images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enhance with a fixed disk radius
    Enhance {
        input: PathBuf,
        output: PathBuf,
        /// Disk radius in pixels
        #[arg(long, short)]
        radius: usize,
        /// Also write <stem>_tophat and <stem>_bottomhat next to the output
        #[arg(long)]
        dump_stages: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Enhance with the radius chosen by the edge-content search
    Auto {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the (radius, ec) curve as CSV to this path
        #[arg(long, value_name = "CSV")]
        emit_curve: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the morphological method and CLAHE side by side
    Compare {
        input: PathBuf,
        outdir: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        clahe: ClaheArgs,
    },
    /// Print the edge content of an image
    Metrics { input: PathBuf },
    /// Auto-enhance every PNG/TIFF/PGM in a directory
    Batch {
        input_dir: PathBuf,
        output_dir: PathBuf,
        /// CSV report path [default: <OUTPUT_DIR>/report.csv]
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads [default: available parallelism]
        #[arg(long, short, env = "MORPHX_JOBS")]
        jobs: Option<usize>,
        /// Also run CLAHE and report its edge content
        #[arg(long)]
        with_clahe: bool,
        /// Descend into subdirectories
        #[arg(long)]
        recursive: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        clahe: ClaheArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output sample depth
    #[arg(long, default_value = "8", value_parser = ["8", "16"])]
    depth: String,
}

impl OutputArgs {
    fn depth(&self) -> morphx::PixelDepth {
        if self.depth == "16" {
            morphx::PixelDepth::Sixteen
        } else {
            morphx::PixelDepth::Eight
        }
    }
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    #[arg(long, default_value_t = SearchConfig::default().r_min)]
    r_min: usize,
    #[arg(long, default_value_t = SearchConfig::default().r_max)]
    r_max: usize,
    #[arg(long, default_value_t = SearchConfig::default().step)]
    step: usize,
    /// Relative EC gain below which a step counts as flat
    #[arg(long, default_value_t = SearchConfig::default().plateau_rel_tol)]
    tol: f64,
    /// Consecutive flat steps that end the search
    #[arg(long, default_value_t = SearchConfig::default().plateau_patience)]
    patience: usize,
}

impl SearchArgs {
    fn config(&self) -> Result<SearchConfig, CliError> {
        let cfg = SearchConfig {
            r_min: self.r_min,
            r_max: self.r_max,
            step: self.step,
            plateau_rel_tol: self.tol,
            plateau_patience: self.patience,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug, Clone)]
struct ClaheArgs {
    /// CLAHE tiles along x
    #[arg(long, default_value_t = ClaheParams::default().tiles_x)]
    tiles_x: usize,
    /// CLAHE tiles along y
    #[arg(long, default_value_t = ClaheParams::default().tiles_y)]
    tiles_y: usize,
    /// CLAHE histogram bins
    #[arg(long, default_value_t = ClaheParams::default().bins)]
    bins: usize,
    /// CLAHE clip limit as a fraction of tile pixels
    #[arg(long, default_value_t = ClaheParams::default().clip_limit)]
    clip: f64,
}

impl ClaheArgs {
    fn params(&self) -> Result<ClaheParams, CliError> {
        let p = ClaheParams {
            tiles_x: self.tiles_x,
            tiles_y: self.tiles_y,
            bins: self.bins,
            clip_limit: self.clip,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug)]
enum CliError {
    Io(String),
    Usage(String),
    PartialBatch(usize),
}

impl From<morphx::Error> for CliError {
    fn from(err: morphx::Error) -> Self {
        match err {
            morphx::Error::Io { .. } | morphx::Error::Format { .. } => {
                CliError::Io(err.to_string())
            }
            morphx::Error::Dimension(_) | morphx::Error::InvalidArgument(_) => {
                CliError::Usage(err.to_string())
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Enhance {
            input,
            output,
            radius,
            dump_stages,
            out,
        } => commands::enhance(&input, &output, radius, dump_stages, out.depth()),
        Command::Auto {
            input,
            output,
            search,
            emit_curve,
            out,
        } => commands::auto(
            &input,
            &output,
            &search.config()?,
            emit_curve.as_deref(),
            out.depth(),
        ),
        Command::Compare {
            input,
            outdir,
            search,
            clahe,
        } => commands::compare(&input, &outdir, &search.config()?, &clahe.params()?),
        Command::Metrics { input } => commands::metrics(&input),
        Command::Batch {
            input_dir,
            output_dir,
            report,
            jobs,
            with_clahe,
            recursive,
            search,
            clahe,
        } => {
            let opts = batch::BatchOptions {
                report: report.unwrap_or_else(|| output_dir.join("report.csv")),
                input_dir,
                output_dir,
                jobs: jobs
                    .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
                clahe: with_clahe.then(|| clahe.params()).transpose()?,
                recursive,
                search: search.config()?,
            };
            batch::run(&opts)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::PartialBatch(n)) => {
            eprintln!("error: {n} image(s) failed");
            ExitCode::from(3)
        }
    }
}
