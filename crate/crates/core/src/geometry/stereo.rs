use nalgebra::Vector3;

use super::{GeometryError, Intrinsics, Landmark, Pose, Rotation};

/// Disparities at or below this default are rejected as unresolvably far.
pub const DEFAULT_MIN_DISPARITY: f64 = 0.5;

/// Tolerance used by [`StereoRig::is_rectified`].
const RECTIFICATION_TOL: f64 = 1e-9;

/// A calibrated stereo pair. `right_from_left` maps left-camera coordinates
/// into the right camera; for a rectified rig it is a pure translation along
/// the negative x-axis with magnitude `baseline`.
#[derive(Debug, Clone, PartialEq)]
pub struct StereoRig {
    pub left: Intrinsics,
    pub right: Intrinsics,
    pub right_from_left: Pose,
    /// Norm of the relative translation, meters.
    pub baseline: f64,
}

impl StereoRig {
    pub fn new(
        left: Intrinsics,
        right: Intrinsics,
        right_from_left: Pose,
    ) -> Result<Self, GeometryError> {
        left.validate()?;
        right.validate()?;
        let baseline = right_from_left.translation.norm();
        if !(baseline > 0.0) {
            return Err(GeometryError::InvalidRig {
                reason: format!("baseline must be positive, got {baseline}"),
            });
        }
        Ok(StereoRig {
            left,
            right,
            right_from_left,
            baseline,
        })
    }

    /// Builds a rectified rig: identical intrinsics, identity relative
    /// rotation, and the right camera displaced `baseline` meters along +x
    /// (so its world-to-camera translation is `(-baseline, 0, 0)`).
    pub fn rectified(intrinsics: Intrinsics, baseline: f64) -> Result<Self, GeometryError> {
        StereoRig::new(
            intrinsics,
            intrinsics,
            Pose::new(Rotation::identity(), Vector3::new(-baseline, 0.0, 0.0)),
        )
    }

    /// True when the relative rotation is the identity and the relative
    /// translation is aligned with the camera x-axis.
    pub fn is_rectified(&self) -> bool {
        let rot_dev = (self.right_from_left.rotation.matrix()
            - Rotation::identity().matrix())
        .abs()
        .max();
        let t = &self.right_from_left.translation;
        rot_dev <= RECTIFICATION_TOL
            && t.y.abs() <= RECTIFICATION_TOL * self.baseline.max(1.0)
            && t.z.abs() <= RECTIFICATION_TOL * self.baseline.max(1.0)
    }
}

/// Depth from disparity on a rectified rig. `u_left`/`u_right` are the
/// horizontal pixel coordinates of the same point in the two images, `v` its
/// row. Returns the point in the left-camera frame:
/// `Z = fx*b/d`, `X = (u_left-cx)*Z/fx`, `Y = (v-cy)*Z/fy`.
pub fn triangulate_rectified(
    rig: &StereoRig,
    u_left: f64,
    u_right: f64,
    v: f64,
    min_disparity: f64,
) -> Result<Landmark, GeometryError> {
    debug_assert!(rig.is_rectified());
    let disparity = u_left - u_right;
    if disparity <= min_disparity {
        return Err(GeometryError::DisparityTooSmall {
            disparity,
            min: min_disparity,
        });
    }
    let k = &rig.left;
    let z = k.fx * rig.baseline / disparity;
    Ok(Vector3::new(
        (u_left - k.cx) * z / k.fx,
        (v - k.cy) * z / k.fy,
        z,
    ))
}
