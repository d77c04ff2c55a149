use nalgebra::{Vector2, Vector3};

use super::{GeometryError, Landmark, Pose};

/// Depth below which a point counts as behind the camera.
pub const EPSILON_DEPTH: f64 = 1e-6;

/// Pinhole intrinsics of a rectified (distortion-free) camera.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intrinsics {
    /// Focal lengths in pixels.
    pub fx: f64,
    pub fy: f64,
    /// Principal point in pixels.
    pub cx: f64,
    pub cy: f64,
    /// Image size in pixels.
    pub width: usize,
    pub height: usize,
}

impl Intrinsics {
    pub fn new(
        fx: f64,
        fy: f64,
        cx: f64,
        cy: f64,
        width: usize,
        height: usize,
    ) -> Result<Self, GeometryError> {
        let k = Intrinsics {
            fx,
            fy,
            cx,
            cy,
            width,
            height,
        };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if !(self.fx > 0.0 && self.fy > 0.0) {
            return Err(GeometryError::InvalidIntrinsics {
                reason: format!("focal lengths must be positive (fx={}, fy={})", self.fx, self.fy),
            });
        }
        if !(self.cx >= 0.0 && self.cx < self.width as f64) {
            return Err(GeometryError::InvalidIntrinsics {
                reason: format!("cx={} outside [0, {})", self.cx, self.width),
            });
        }
        if !(self.cy >= 0.0 && self.cy < self.height as f64) {
            return Err(GeometryError::InvalidIntrinsics {
                reason: format!("cy={} outside [0, {})", self.cy, self.height),
            });
        }
        Ok(())
    }

    /// True if `uv` lies within the image, shrunk by `margin` pixels per side.
    pub fn contains(&self, uv: &Vector2<f64>, margin: f64) -> bool {
        uv.x >= margin
            && uv.y >= margin
            && uv.x <= self.width as f64 - 1.0 - margin
            && uv.y <= self.height as f64 - 1.0 - margin
    }
}

/// Projects a world point through a world-to-camera pose onto the image plane.
/// Points with camera depth `<= EPSILON_DEPTH` are reported as behind the
/// camera rather than silently projected.
pub fn project(p: &Landmark, c: &Pose, k: &Intrinsics) -> Result<Vector2<f64>, GeometryError> {
    project_camera_frame(&c.transform(p), k)
}

/// Projects a point already expressed in the camera frame.
#[inline]
pub fn project_camera_frame(
    x_cam: &Vector3<f64>,
    k: &Intrinsics,
) -> Result<Vector2<f64>, GeometryError> {
    if x_cam.z <= EPSILON_DEPTH {
        return Err(GeometryError::BehindCamera {
            depth: x_cam.z,
            epsilon: EPSILON_DEPTH,
        });
    }
    let inv_z = 1.0 / x_cam.z;
    Ok(Vector2::new(
        k.fx * x_cam.x * inv_z + k.cx,
        k.fy * x_cam.y * inv_z + k.cy,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rotation;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn k_hd() -> Intrinsics {
        Intrinsics::new(100.0, 100.0, 640.0, 360.0, 1280, 720).unwrap()
    }

    #[test]
    fn optical_axis_hits_principal_point() {
        let uv = project(&Vector3::new(0.0, 0.0, 1.0), &Pose::identity(), &k_hd()).unwrap();
        assert_relative_eq!(uv, Vector2::new(640.0, 360.0), epsilon = 1e-12);
    }

    #[test]
    fn off_axis_point_follows_pinhole_ratio() {
        let k = Intrinsics {
            fx: 100.0,
            fy: 100.0,
            cx: 0.0,
            cy: 0.0,
            width: 1280,
            height: 720,
        };
        let uv = project(&Vector3::new(1.0, 0.0, 2.0), &Pose::identity(), &k).unwrap();
        assert_relative_eq!(uv, Vector2::new(50.0, 0.0), epsilon = 1e-12);
    }

    #[test]
    fn negative_depth_is_flagged() {
        let res = project(&Vector3::new(0.0, 0.0, -1.0), &Pose::identity(), &k_hd());
        assert!(matches!(res, Err(GeometryError::BehindCamera { .. })));
    }

    #[test]
    fn projection_invariant_under_rigid_world_change() {
        // Moving the world points by T and the camera by T^-1 leaves pixels fixed.
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        let k = k_hd();
        for _ in 0..100 {
            let p = Vector3::new(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(1.0..10.0),
            );
            let cam = crate::geometry::se3_exp(
                Vector3::new(
                    rng.random_range(-0.3..0.3),
                    rng.random_range(-0.3..0.3),
                    rng.random_range(-0.3..0.3),
                ),
                Vector3::new(
                    rng.random_range(-0.5..0.5),
                    rng.random_range(-0.5..0.5),
                    rng.random_range(-0.5..0.5),
                ),
            );
            let rigid = crate::geometry::se3_exp(
                Vector3::new(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ),
                Vector3::new(
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                ),
            );
            let uv = match project(&p, &cam, &k) {
                Ok(uv) => uv,
                Err(_) => continue,
            };
            let p_moved = rigid.transform(&p);
            let cam_moved = cam.compose(&rigid.inverse());
            let uv_moved = project(&p_moved, &cam_moved, &k).unwrap();
            assert_relative_eq!(uv, uv_moved, epsilon = 1e-9);
            let _ = Rotation::from_matrix(*cam_moved.rotation.matrix()).unwrap();
        }
    }
}
