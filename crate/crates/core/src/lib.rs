//! Grayscale morphological contrast enhancement for X-ray images.
//!
//! The core pipeline adds the top-hat response to an image and subtracts the
//! bottom-hat response, using a disk structuring element whose radius is
//! chosen automatically by sweeping radii until the image's Edge Content
//! levels off. A CLAHE implementation is included as a baseline.

pub mod clahe;
pub mod enhance;
pub mod error;
pub mod gray;
pub mod io;
pub mod metrics;
pub mod morphology;
pub mod synth;

pub use clahe::{clahe, compare, ClaheParams, Comparison};
pub use enhance::{bottom_hat, enhance_fixed, top_hat, EnhanceStages};
pub use error::{Error, Result};
pub use gray::{clamp_to_range, GrayImage};
pub use io::{load_image, load_image_with_depth, save_image, PixelDepth};
pub use metrics::{
    auto_enhance, ec_sweep, edge_content, gradient_field, select_se, EcCurve, EcSample,
    EnhanceResult, GradientField, SearchConfig,
};
pub use morphology::{close, dilate, erode, make_disk, open, DiskSE, Kernel};
