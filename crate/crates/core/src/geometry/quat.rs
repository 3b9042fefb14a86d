//! Scalar-last unit quaternions, `(x, y, z, w)` with identity `(0, 0, 0, 1)`.

use super::{hat, Mat3, Vec3};

/// Quaternion with vector part `v` and scalar part `w`.
///
/// Products of unit quaternions stay unit up to rounding; callers that
/// integrate quaternions renormalize explicitly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitQuat {
    pub v: Vec3,
    pub w: f64,
}

impl UnitQuat {
    pub const IDENTITY: UnitQuat = UnitQuat {
        v: Vec3::new(0.0, 0.0, 0.0),
        w: 1.0,
    };

    /// Builds a quaternion from raw components without normalizing.
    pub fn from_xyzw(x: f64, y: f64, z: f64, w: f64) -> Self {
        UnitQuat {
            v: Vec3::new(x, y, z),
            w,
        }
    }

    pub fn to_xyzw(&self) -> [f64; 4] {
        [self.v.x, self.v.y, self.v.z, self.w]
    }

    pub fn norm(&self) -> f64 {
        (self.v.norm_squared() + self.w * self.w).sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        UnitQuat {
            v: self.v / n,
            w: self.w / n,
        }
    }

    /// Rotation by `angle` radians about the unit `axis`.
    pub fn from_axis_angle(axis: &Vec3, angle: f64) -> Self {
        let (s, c) = (0.5 * angle).sin_cos();
        UnitQuat { v: axis * s, w: c }
    }

    /// Quaternion of a proper rotation matrix (Shepperd's method). The sign
    /// is chosen so that `w >= 0`.
    pub fn from_rotmat(r: &Mat3) -> Self {
        let tr = r.trace();
        let q = if tr > r[(0, 0)] && tr > r[(1, 1)] && tr > r[(2, 2)] {
            let s = 2.0 * (1.0 + tr).sqrt();
            UnitQuat::from_xyzw(
                (r[(2, 1)] - r[(1, 2)]) / s,
                (r[(0, 2)] - r[(2, 0)]) / s,
                (r[(1, 0)] - r[(0, 1)]) / s,
                0.25 * s,
            )
        } else if r[(0, 0)] >= r[(1, 1)] && r[(0, 0)] >= r[(2, 2)] {
            let s = 2.0 * (1.0 + r[(0, 0)] - r[(1, 1)] - r[(2, 2)]).sqrt();
            UnitQuat::from_xyzw(
                0.25 * s,
                (r[(0, 1)] + r[(1, 0)]) / s,
                (r[(0, 2)] + r[(2, 0)]) / s,
                (r[(2, 1)] - r[(1, 2)]) / s,
            )
        } else if r[(1, 1)] >= r[(2, 2)] {
            let s = 2.0 * (1.0 + r[(1, 1)] - r[(0, 0)] - r[(2, 2)]).sqrt();
            UnitQuat::from_xyzw(
                (r[(0, 1)] + r[(1, 0)]) / s,
                0.25 * s,
                (r[(1, 2)] + r[(2, 1)]) / s,
                (r[(0, 2)] - r[(2, 0)]) / s,
            )
        } else {
            let s = 2.0 * (1.0 + r[(2, 2)] - r[(0, 0)] - r[(1, 1)]).sqrt();
            UnitQuat::from_xyzw(
                (r[(0, 2)] + r[(2, 0)]) / s,
                (r[(1, 2)] + r[(2, 1)]) / s,
                0.25 * s,
                (r[(1, 0)] - r[(0, 1)]) / s,
            )
        };
        let q = q.normalized();
        if q.w < 0.0 {
            UnitQuat { v: -q.v, w: -q.w }
        } else {
            q
        }
    }

    pub fn to_rotmat(&self) -> Mat3 {
        quat_to_rotmat(self)
    }
}

/// Hamilton product `a ⊙ b`.
pub fn quat_multiply(a: &UnitQuat, b: &UnitQuat) -> UnitQuat {
    UnitQuat {
        v: a.w * b.v + b.w * a.v + a.v.cross(&b.v),
        w: a.w * b.w - a.v.dot(&b.v),
    }
}

/// Rotation matrix of a unit quaternion, `(w² − vᵀv) I + 2 v vᵀ + 2 w [v]×`.
pub fn quat_to_rotmat(q: &UnitQuat) -> Mat3 {
    let v = q.v;
    Mat3::identity() * (q.w * q.w - v.norm_squared())
        + 2.0 * v * v.transpose()
        + 2.0 * q.w * hat(&v)
}

/// Pure quaternion `(ω, 0)`.
pub fn homogenize(omega: &Vec3) -> UnitQuat {
    UnitQuat { v: *omega, w: 0.0 }
}
