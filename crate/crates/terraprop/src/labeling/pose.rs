//! Rigid camera poses and frame-to-frame point transport.

use nalgebra::{Matrix3, Quaternion, UnitQuaternion, Vector3};

use super::LabelingError;

const ORTHONORMALITY_TOL: f64 = 1e-9;
const DETERMINANT_TOL: f64 = 1e-9;
const QUATERNION_NORM_TOL: f64 = 1e-6;

/// Camera-to-world rigid transform: `p_world = R p_camera + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    rotation: Matrix3<f64>,
    translation: Vector3<f64>,
}

impl Pose {
    /// Builds a pose from a row-major rotation matrix and a translation,
    /// rejecting anything that is not a proper rotation.
    pub fn new(rotation: [[f64; 3]; 3], translation: [f64; 3]) -> Result<Self, LabelingError> {
        let r = Matrix3::new(
            rotation[0][0], rotation[0][1], rotation[0][2],
            rotation[1][0], rotation[1][1], rotation[1][2],
            rotation[2][0], rotation[2][1], rotation[2][2],
        );
        if r.iter().any(|v| !v.is_finite()) {
            return Err(LabelingError::NonFinite { name: "rotation" });
        }
        let defect = (r.transpose() * r - Matrix3::identity()).norm();
        if defect > ORTHONORMALITY_TOL {
            return Err(LabelingError::NotOrthonormal { defect });
        }
        let det = r.determinant();
        if (det - 1.0).abs() > DETERMINANT_TOL {
            return Err(LabelingError::BadDeterminant { det });
        }
        let t = Vector3::from(translation);
        if t.iter().any(|v| !v.is_finite()) {
            return Err(LabelingError::NonFinite { name: "translation" });
        }
        Ok(Self { rotation: r, translation: t })
    }

    /// Builds a pose from a quaternion `(w, x, y, z)` and a translation.
    ///
    /// The quaternion must already be unit length to within 1e-6; it is
    /// then normalized exactly, so downstream rotations always pass the
    /// orthonormality gate.
    pub fn from_quaternion(
        qw: f64,
        qx: f64,
        qy: f64,
        qz: f64,
        translation: [f64; 3],
    ) -> Result<Self, LabelingError> {
        let q = Quaternion::new(qw, qx, qy, qz);
        if !q.norm().is_finite() {
            return Err(LabelingError::NonFinite { name: "quaternion" });
        }
        let norm = q.norm();
        if (norm - 1.0).abs() > QUATERNION_NORM_TOL {
            return Err(LabelingError::NotUnitQuaternion { norm });
        }
        let rotation = UnitQuaternion::from_quaternion(q).to_rotation_matrix().into_inner();
        let t = Vector3::from(translation);
        if t.iter().any(|v| !v.is_finite()) {
            return Err(LabelingError::NonFinite { name: "translation" });
        }
        Ok(Self { rotation, translation: t })
    }

    pub fn identity() -> Self {
        Self { rotation: Matrix3::identity(), translation: Vector3::zeros() }
    }

    pub fn camera_to_world(&self, point: [f64; 3]) -> [f64; 3] {
        (self.rotation * Vector3::from(point) + self.translation).into()
    }

    pub fn world_to_camera(&self, point: [f64; 3]) -> [f64; 3] {
        (self.rotation.transpose() * (Vector3::from(point) - self.translation)).into()
    }

    /// Rotation matrix, row-major.
    pub fn rotation(&self) -> [[f64; 3]; 3] {
        let r = &self.rotation;
        [
            [r[(0, 0)], r[(0, 1)], r[(0, 2)]],
            [r[(1, 0)], r[(1, 1)], r[(1, 2)]],
            [r[(2, 0)], r[(2, 1)], r[(2, 2)]],
        ]
    }

    pub fn translation(&self) -> [f64; 3] {
        self.translation.into()
    }
}

/// Moves a point given in the source camera frame into the destination
/// camera frame.
pub fn transform_between(src: &Pose, dst: &Pose, point: [f64; 3]) -> [f64; 3] {
    dst.world_to_camera(src.camera_to_world(point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn identity_round_trip() {
        let pose = Pose::identity();
        let p = [0.3, -0.2, 1.5];
        assert_eq!(pose.camera_to_world(p), p);
        assert_eq!(pose.world_to_camera(p), p);
        assert_eq!(transform_between(&pose, &pose, p), p);
    }

    #[test]
    fn quarter_turn_about_z_maps_x_to_y() {
        let pose =
            Pose::from_quaternion(FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2, [0.0; 3]).unwrap();
        let p = pose.camera_to_world([1.0, 0.0, 0.0]);
        assert_relative_eq!(p[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(p[1], 1.0, epsilon = 1e-12);
        assert_relative_eq!(p[2], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn pure_translation_shifts_destination_coordinates() {
        let src = Pose::identity();
        let dst = Pose::new(Pose::identity().rotation(), [0.5, -0.25, 2.0]).unwrap();
        let p = transform_between(&src, &dst, [1.0, 1.0, 1.0]);
        assert_eq!(p, [0.5, 1.25, -1.0]);
    }

    #[test]
    fn near_unit_quaternion_is_normalized() {
        let eps = 3e-7;
        let pose = Pose::from_quaternion(1.0 + eps, 0.0, 0.0, 0.0, [0.0; 3]).unwrap();
        // Normalization makes the rotation exactly orthonormal again.
        assert!(Pose::new(pose.rotation(), [0.0; 3]).is_ok());
    }

    #[test]
    fn rejects_degenerate_rotations() {
        assert!(matches!(
            Pose::from_quaternion(0.9, 0.0, 0.0, 0.0, [0.0; 3]),
            Err(LabelingError::NotUnitQuaternion { .. })
        ));
        let skew = [[1.0, 0.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(matches!(Pose::new(skew, [0.0; 3]), Err(LabelingError::NotOrthonormal { .. })));
        // Orthonormal but a reflection.
        let mirror = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]];
        assert!(matches!(Pose::new(mirror, [0.0; 3]), Err(LabelingError::BadDeterminant { .. })));
        let nan = [[f64::NAN, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(matches!(Pose::new(nan, [0.0; 3]), Err(LabelingError::NonFinite { .. })));
        assert!(matches!(
            Pose::new(Pose::identity().rotation(), [f64::INFINITY, 0.0, 0.0]),
            Err(LabelingError::NonFinite { .. })
        ));
    }

    fn arb_pose() -> impl Strategy<Value = Pose> {
        (
            -1.0f64..1.0,
            -1.0f64..1.0,
            -1.0f64..1.0,
            -1.0f64..1.0,
            proptest::array::uniform3(-5.0f64..5.0),
        )
            .prop_filter_map("zero quaternion", |(w, x, y, z, t)| {
                let norm = (w * w + x * x + y * y + z * z).sqrt();
                if norm < 1e-3 {
                    return None;
                }
                Some(Pose::from_quaternion(w / norm, x / norm, y / norm, z / norm, t).unwrap())
            })
    }

    proptest! {
        #[test]
        fn transform_then_inverse_is_identity(
            src in arb_pose(), dst in arb_pose(),
            p in proptest::array::uniform3(-10.0f64..10.0),
        ) {
            let q = transform_between(&src, &dst, p);
            let back = transform_between(&dst, &src, q);
            for i in 0..3 {
                prop_assert!((back[i] - p[i]).abs() <= 1e-9);
            }
        }

        #[test]
        fn world_round_trip(pose in arb_pose(), p in proptest::array::uniform3(-10.0f64..10.0)) {
            let w = pose.camera_to_world(p);
            let back = pose.world_to_camera(w);
            for i in 0..3 {
                prop_assert!((back[i] - p[i]).abs() <= 1e-9);
            }
        }
    }
}
