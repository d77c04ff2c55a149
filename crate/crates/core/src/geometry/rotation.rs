use std::f64::consts::PI;
use std::ops::Mul;

use nalgebra::{Matrix3, Vector3};

use super::GeometryError;

/// Orthonormality tolerance for [`Rotation::from_matrix`].
const ORTHONORMALITY_TOL: f64 = 1e-9;

/// An element of SO(3), stored as an orthonormal 3x3 matrix with determinant +1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation(Matrix3<f64>);

impl Rotation {
    pub fn identity() -> Self {
        Rotation(Matrix3::identity())
    }

    /// Wraps a matrix that is already known to be a rotation.
    /// Callers outside this module should prefer [`Rotation::from_matrix`].
    pub(crate) fn from_matrix_unchecked(m: Matrix3<f64>) -> Self {
        Rotation(m)
    }

    /// Validates orthonormality (`R^T R = I` within 1e-9) and `det R = +1`.
    pub fn from_matrix(m: Matrix3<f64>) -> Result<Self, GeometryError> {
        if m.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::NotARotation {
                reason: "non-finite entries".to_string(),
            });
        }
        let gram = m.transpose() * m;
        let max_dev = (gram - Matrix3::identity()).abs().max();
        if max_dev > ORTHONORMALITY_TOL {
            return Err(GeometryError::NotARotation {
                reason: format!("R^T R deviates from identity by {max_dev:.3e}"),
            });
        }
        let det = m.determinant();
        if (det - 1.0).abs() > ORTHONORMALITY_TOL {
            return Err(GeometryError::NotARotation {
                reason: format!("determinant is {det}"),
            });
        }
        Ok(Rotation(m))
    }

    /// Rodrigues exponential map. The rotation angle equals `|omega|`.
    pub fn exp(omega: Vector3<f64>) -> Self {
        let theta_sq = omega.norm_squared();
        let theta = theta_sq.sqrt();
        let hat = skew(&omega);
        // sin(t)/t and (1-cos(t))/t^2, with series expansions near zero.
        let (a, b) = if theta < 1e-4 {
            (
                1.0 - theta_sq / 6.0 + theta_sq * theta_sq / 120.0,
                0.5 - theta_sq / 24.0 + theta_sq * theta_sq / 720.0,
            )
        } else {
            (theta.sin() / theta, (1.0 - theta.cos()) / theta_sq)
        };
        Rotation(Matrix3::identity() + hat * a + hat * hat * b)
    }

    /// Logarithm map; inverse of [`Rotation::exp`] on the `|omega| < pi` domain.
    pub fn log(&self) -> Vector3<f64> {
        let r = &self.0;
        let cos = ((r.trace() - 1.0) * 0.5).clamp(-1.0, 1.0);
        let theta = cos.acos();
        let vee = 0.5
            * Vector3::new(
                r[(2, 1)] - r[(1, 2)],
                r[(0, 2)] - r[(2, 0)],
                r[(1, 0)] - r[(0, 1)],
            );
        if theta < 1e-5 {
            let t2 = theta * theta;
            vee * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0)
        } else if theta > PI - 1e-5 {
            // Near pi the antisymmetric part vanishes; recover the axis from
            // the symmetric part aa^T = (S - cos*I) / (1 - cos).
            let s = (r + r.transpose()) * 0.5;
            let aa = (s - Matrix3::identity() * cos) / (1.0 - cos);
            let k = (0..3)
                .max_by(|&a, &b| aa[(a, a)].partial_cmp(&aa[(b, b)]).unwrap())
                .unwrap();
            let ak = aa[(k, k)].max(0.0).sqrt();
            let mut axis = Vector3::zeros();
            axis[k] = ak;
            for j in 0..3 {
                if j != k {
                    axis[j] = aa[(k, j)] / ak;
                }
            }
            if axis.dot(&vee) < 0.0 {
                axis = -axis;
            }
            axis.normalize() * theta
        } else {
            vee * (theta / theta.sin())
        }
    }

    /// Axis-angle vector; alias for [`Rotation::log`].
    pub fn axis_angle(&self) -> Vector3<f64> {
        self.log()
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    #[inline]
    pub fn apply(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.0 * v
    }

    pub fn inverse(&self) -> Self {
        Rotation(self.0.transpose())
    }

    /// Geodesic distance to another rotation, in radians.
    pub fn angle_to(&self, other: &Rotation) -> f64 {
        (self.inverse() * *other).log().norm()
    }
}

impl Mul for Rotation {
    type Output = Rotation;

    fn mul(self, rhs: Rotation) -> Rotation {
        Rotation(self.0 * rhs.0)
    }
}

/// The skew-symmetric (cross-product) matrix of `v`.
pub(crate) fn skew(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, 0.0, v.x)
}
