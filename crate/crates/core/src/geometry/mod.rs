//! Shared geometric substrate: SO(3)/SE(3), the pinhole camera model, and
//! rectified-stereo triangulation.
//!
//! Conventions used throughout the crate:
//! - Poses are world-to-camera: `X_cam = R * X_world + t`.
//! - Pixel coordinates have their origin at the top-left corner, y pointing
//!   down, matching raster storage order.
//! - Angles are radians, lengths are meters, pixel quantities are pixels.

mod camera;
mod rotation;
mod se3;
mod stereo;

pub use camera::{project, project_camera_frame, Intrinsics, EPSILON_DEPTH};
pub use rotation::Rotation;
pub use se3::{se3_exp, se3_log, Pose};
pub use stereo::{triangulate_rectified, StereoRig, DEFAULT_MIN_DISPARITY};

use nalgebra::Vector3;
use thiserror::Error;

/// A 3D point in world coordinates (meters) unless a camera frame is stated.
pub type Landmark = Vector3<f64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("point is behind the camera (depth {depth:.6e} <= {epsilon:.0e})")]
    BehindCamera { depth: f64, epsilon: f64 },
    #[error("disparity {disparity} px is at or below the minimum {min} px; the point is unresolvably far")]
    DisparityTooSmall { disparity: f64, min: f64 },
    #[error("not a rotation matrix: {reason}")]
    NotARotation { reason: String },
    #[error("invalid intrinsics: {reason}")]
    InvalidIntrinsics { reason: String },
    #[error("invalid stereo rig: {reason}")]
    InvalidRig { reason: String },
}
