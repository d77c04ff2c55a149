use nalgebra::{Matrix3, Vector3};

use super::rotation::{skew, Rotation};

/// A rigid transform in SE(3), stored world-to-camera: `X_cam = R * X_world + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub rotation: Rotation,
    pub translation: Vector3<f64>,
}

impl Pose {
    pub fn identity() -> Self {
        Pose {
            rotation: Rotation::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn new(rotation: Rotation, translation: Vector3<f64>) -> Self {
        Pose {
            rotation,
            translation,
        }
    }

    /// Applies the transform: `R * p + t`.
    #[inline]
    pub fn transform(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.rotation.apply(p) + self.translation
    }

    /// `self * other`: the transform that first applies `other`, then `self`.
    pub fn compose(&self, other: &Pose) -> Pose {
        Pose {
            rotation: self.rotation * other.rotation,
            translation: self.rotation.apply(&other.translation) + self.translation,
        }
    }

    pub fn inverse(&self) -> Pose {
        let rot_inv = self.rotation.inverse();
        Pose {
            rotation: rot_inv,
            translation: -rot_inv.apply(&self.translation),
        }
    }

    /// The camera center expressed in world coordinates, `-R^T t`.
    pub fn center(&self) -> Vector3<f64> {
        -self.rotation.inverse().apply(&self.translation)
    }

    pub fn is_finite(&self) -> bool {
        self.rotation.matrix().iter().all(|v| v.is_finite())
            && self.translation.iter().all(|v| v.is_finite())
    }
}

/// SE(3) exponential map. `omega` is the rotational part (radians, angle =
/// `|omega|`), `v` the translational part; the translation of the result is
/// `V(omega) * v` with `V` the left Jacobian of SO(3).
pub fn se3_exp(omega: Vector3<f64>, v: Vector3<f64>) -> Pose {
    Pose {
        rotation: Rotation::exp(omega),
        translation: left_jacobian(&omega) * v,
    }
}

/// Inverse of [`se3_exp`] on the `|omega| < pi` domain; returns `(omega, v)`.
pub fn se3_log(pose: &Pose) -> (Vector3<f64>, Vector3<f64>) {
    let omega = pose.rotation.log();
    let v = left_jacobian_inverse(&omega) * pose.translation;
    (omega, v)
}

fn left_jacobian(omega: &Vector3<f64>) -> Matrix3<f64> {
    let theta_sq = omega.norm_squared();
    let theta = theta_sq.sqrt();
    let hat = skew(omega);
    // (1-cos t)/t^2 and (t - sin t)/t^3 with series near zero.
    let (b, c) = if theta < 1e-4 {
        (
            0.5 - theta_sq / 24.0 + theta_sq * theta_sq / 720.0,
            1.0 / 6.0 - theta_sq / 120.0 + theta_sq * theta_sq / 5040.0,
        )
    } else {
        (
            (1.0 - theta.cos()) / theta_sq,
            (theta - theta.sin()) / (theta_sq * theta),
        )
    };
    Matrix3::identity() + hat * b + hat * hat * c
}

fn left_jacobian_inverse(omega: &Vector3<f64>) -> Matrix3<f64> {
    let theta_sq = omega.norm_squared();
    let theta = theta_sq.sqrt();
    let hat = skew(omega);
    let c = if theta < 1e-4 {
        1.0 / 12.0 + theta_sq / 720.0 + theta_sq * theta_sq / 30240.0
    } else {
        // (1 - (sin t / t) / (2 (1-cos t)/t^2)) / t^2, stable on (0, pi].
        let a = theta.sin() / theta;
        let b = (1.0 - theta.cos()) / theta_sq;
        (1.0 - a / (2.0 * b)) / theta_sq
    };
    Matrix3::identity() - hat * 0.5 + hat * hat * c
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn exp_of_zero_is_identity_pose() {
        let p = se3_exp(Vector3::zeros(), Vector3::zeros());
        assert_eq!(p.rotation.matrix(), Rotation::identity().matrix());
        assert_eq!(p.translation, Vector3::zeros());
    }

    #[test]
    fn quarter_turn_pose_maps_x_axis_to_y_axis() {
        let p = se3_exp(Vector3::new(0.0, 0.0, PI / 2.0), Vector3::zeros());
        assert_relative_eq!(p.transform(&Vector3::x()), Vector3::y(), epsilon = 1e-12);
    }

    #[test]
    fn compose_then_inverse_is_identity() {
        let a = se3_exp(Vector3::new(0.2, -0.4, 0.9), Vector3::new(1.0, -2.0, 0.5));
        let round = a.compose(&a.inverse());
        assert_relative_eq!(
            *round.rotation.matrix(),
            *Rotation::identity().matrix(),
            epsilon = 1e-12
        );
        assert_relative_eq!(round.translation, Vector3::zeros(), epsilon = 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn log_inverts_exp(
            ax in -1.0f64..1.0, ay in -1.0f64..1.0, az in -1.0f64..1.0,
            angle in 0.0f64..(PI - 1e-3),
            vx in -10.0f64..10.0, vy in -10.0f64..10.0, vz in -10.0f64..10.0,
        ) {
            let axis = Vector3::new(ax, ay, az);
            prop_assume!(axis.norm() > 1e-3);
            let omega = axis.normalize() * angle;
            let v = Vector3::new(vx, vy, vz);
            let (omega_back, v_back) = se3_log(&se3_exp(omega, v));
            prop_assert!((omega_back - omega).norm() < 1e-9);
            prop_assert!((v_back - v).norm() < 1e-9 * v.norm().max(1.0));
        }
    }
}
