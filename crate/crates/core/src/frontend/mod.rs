//! ORB feature extraction: image pyramid, FAST-9 detection, intensity-centroid
//! orientation, Gaussian blur, and steered BRIEF description, with level
//! coordinates scaled back to the original image.

mod blur;
mod brief;
mod extract;
mod fast;
mod image;
mod orient;
mod pattern;
mod pyramid;

pub use blur::gaussian_blur;
pub use brief::{brief_describe, Descriptor256};
pub use extract::{extract_features, extract_frame, ExtractorConfig, Feature, FrameFeatures};
pub use fast::{fast_detect, fast_detect_raw, KeyPoint};
pub use image::GrayImage;
pub use orient::compute_orientation;
pub use pattern::{orb_pattern, BriefPattern, BRIEF_PATTERN_VERSION};
pub use pyramid::{build_pyramid, ImagePyramid};

use thiserror::Error;

/// Minimum image side length accepted by extraction and pyramid levels.
pub const MIN_IMAGE_SIDE: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrontendError {
    #[error("image {width}x{height} is smaller than the supported minimum {min}x{min}")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min: usize,
    },
    #[error("pyramid level {level} would be {width}x{height}, below the minimum {min}x{min}")]
    LevelTooSmall {
        level: usize,
        width: usize,
        height: usize,
        min: usize,
    },
    #[error("pixel buffer holds {got} values, expected {expected}")]
    BufferSizeMismatch { got: usize, expected: usize },
    #[error("patch of radius {radius} around ({x}, {y}) leaves the image bounds")]
    PatchOutOfBounds { x: f64, y: f64, radius: i64 },
    #[error("descriptor footprint of radius {radius} around ({x}, {y}) leaves the image bounds")]
    FootprintOutOfBounds { x: f64, y: f64, radius: i64 },
    #[error("invalid extraction config: {reason}")]
    InvalidConfig { reason: String },
}
