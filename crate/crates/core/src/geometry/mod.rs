//! Geometric primitives, rotation algebra and shortest-distance pairs.

pub(crate) mod distance;
mod quat;

use nalgebra::{Matrix3, Vector3};

use crate::error::{invalid, Result};

pub use distance::{
    el_residual, el_root_find, pe_residual, pe_root_find, shortest_distance_pair, DistancePair,
    ElRoot,
};
pub use quat::{homogenize, quat_multiply, quat_to_rotmat, UnitQuat};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Tolerance on unit-norm directions and rotation orthonormality.
pub const UNIT_TOL: f64 = 1e-9;

/// Skew-symmetric matrix with `hat(v) * a == v × a`.
pub fn hat(v: &Vec3) -> Mat3 {
    Mat3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Rodrigues' formula `cosθ I + sinθ [v]× + (1 − cosθ) v vᵀ`.
pub fn axis_angle_to_rotmat(axis: &Vec3, angle: f64) -> Result<Mat3> {
    if !is_unit(axis) {
        return Err(invalid(format!(
            "rotation axis must be unit norm, got {}",
            axis.norm()
        )));
    }
    if !angle.is_finite() {
        return Err(invalid("rotation angle must be finite"));
    }
    Ok(rodrigues(axis, angle))
}

pub(crate) fn rodrigues(axis: &Vec3, angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    Mat3::identity() * c + hat(axis) * s + axis * axis.transpose() * (1.0 - c)
}

pub(crate) fn is_unit(v: &Vec3) -> bool {
    v.iter().all(|c| c.is_finite()) && (v.norm() - 1.0).abs() <= UNIT_TOL
}

pub(crate) fn is_finite3(v: &Vec3) -> bool {
    v.iter().all(|c| c.is_finite())
}

/// Checks `RᵀR = I` and `det R = +1` within [`UNIT_TOL`].
pub fn is_rotation(r: &Mat3) -> bool {
    r.iter().all(|c| c.is_finite())
        && (r.transpose() * r - Mat3::identity()).amax() <= UNIT_TOL
        && (r.determinant() - 1.0).abs() <= UNIT_TOL
}

/// First unit vector orthogonal to `v`, by Gram–Schmidt against `e1`
/// (or `e2` when `v` is close to `e1`).
pub(crate) fn orthogonal_unit(v: &Vec3) -> Vec3 {
    let seed = if v.x.abs() > 0.9 {
        Vec3::y()
    } else {
        Vec3::x()
    };
    (seed - v * v.dot(&seed)).normalize()
}

/// A rigid transformation `x ↦ R x + t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RigidTransform {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl Default for RigidTransform {
    fn default() -> Self {
        Self::identity()
    }
}

impl RigidTransform {
    pub fn identity() -> Self {
        RigidTransform {
            rotation: Mat3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn new(rotation: Mat3, translation: Vec3) -> Result<Self> {
        if !is_rotation(&rotation) {
            return Err(invalid("rotation matrix is not a proper rotation"));
        }
        if !is_finite3(&translation) {
            return Err(invalid("translation must be finite"));
        }
        Ok(RigidTransform {
            rotation,
            translation,
        })
    }

    pub fn from_quat(q: &UnitQuat, translation: Vec3) -> Self {
        RigidTransform {
            rotation: q.normalized().to_rotmat(),
            translation,
        }
    }

    pub fn quaternion(&self) -> UnitQuat {
        UnitQuat::from_rotmat(&self.rotation)
    }

    pub fn apply(&self, p: &Vec3) -> Vec3 {
        self.rotation * p + self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidTransform {
        let rt = self.rotation.transpose();
        RigidTransform {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }
}

/// The seven supported primitive types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimitiveKind {
    Point,
    Line,
    Plane,
    Sphere,
    Cylinder,
    Cone,
    Ellipsoid,
}

impl PrimitiveKind {
    pub fn name(self) -> &'static str {
        match self {
            PrimitiveKind::Point => "point",
            PrimitiveKind::Line => "line",
            PrimitiveKind::Plane => "plane",
            PrimitiveKind::Sphere => "sphere",
            PrimitiveKind::Cylinder => "cylinder",
            PrimitiveKind::Cone => "cone",
            PrimitiveKind::Ellipsoid => "ellipsoid",
        }
    }
}

/// A 3D geometric primitive.
///
/// Spheres, cylinders and cones are surfaces; the ellipsoid is the solid
/// `{y : (y − c)ᵀ A (y − c) ≤ 1}`. A cone is the single nappe opening along
/// `axis` from `apex`.
#[derive(Clone, Debug, PartialEq)]
pub enum Primitive {
    Point {
        position: Vec3,
    },
    Line {
        point: Vec3,
        direction: Vec3,
    },
    Plane {
        point: Vec3,
        normal: Vec3,
    },
    Sphere {
        center: Vec3,
        radius: f64,
    },
    Cylinder {
        point: Vec3,
        axis: Vec3,
        radius: f64,
    },
    Cone {
        apex: Vec3,
        axis: Vec3,
        half_angle: f64,
    },
    Ellipsoid {
        center: Vec3,
        shape: Mat3,
    },
}

impl Primitive {
    pub fn point(position: Vec3) -> Self {
        Primitive::Point { position }
    }

    /// Line through `point`; `direction` is normalized.
    pub fn line(point: Vec3, direction: Vec3) -> Result<Self> {
        let p = Primitive::Line {
            point,
            direction: normalize_dir(direction)?,
        };
        p.validate()?;
        Ok(p)
    }

    /// Plane through `point`; `normal` is normalized.
    pub fn plane(point: Vec3, normal: Vec3) -> Result<Self> {
        let p = Primitive::Plane {
            point,
            normal: normalize_dir(normal)?,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn sphere(center: Vec3, radius: f64) -> Result<Self> {
        let p = Primitive::Sphere { center, radius };
        p.validate()?;
        Ok(p)
    }

    pub fn cylinder(point: Vec3, axis: Vec3, radius: f64) -> Result<Self> {
        let p = Primitive::Cylinder {
            point,
            axis: normalize_dir(axis)?,
            radius,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn cone(apex: Vec3, axis: Vec3, half_angle: f64) -> Result<Self> {
        let p = Primitive::Cone {
            apex,
            axis: normalize_dir(axis)?,
            half_angle,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn ellipsoid(center: Vec3, shape: Mat3) -> Result<Self> {
        let p = Primitive::Ellipsoid { center, shape };
        p.validate()?;
        Ok(p)
    }

    pub fn kind(&self) -> PrimitiveKind {
        match self {
            Primitive::Point { .. } => PrimitiveKind::Point,
            Primitive::Line { .. } => PrimitiveKind::Line,
            Primitive::Plane { .. } => PrimitiveKind::Plane,
            Primitive::Sphere { .. } => PrimitiveKind::Sphere,
            Primitive::Cylinder { .. } => PrimitiveKind::Cylinder,
            Primitive::Cone { .. } => PrimitiveKind::Cone,
            Primitive::Ellipsoid { .. } => PrimitiveKind::Ellipsoid,
        }
    }

    /// Anchor location: the point itself, a point on the line/plane/axis,
    /// the center, or the apex.
    pub fn anchor(&self) -> Vec3 {
        match self {
            Primitive::Point { position } => *position,
            Primitive::Line { point, .. }
            | Primitive::Plane { point, .. }
            | Primitive::Cylinder { point, .. } => *point,
            Primitive::Sphere { center, .. } | Primitive::Ellipsoid { center, .. } => *center,
            Primitive::Cone { apex, .. } => *apex,
        }
    }

    /// Characteristic size used to scale membership tolerances.
    pub fn scale(&self) -> f64 {
        match self {
            Primitive::Sphere { radius, .. } | Primitive::Cylinder { radius, .. } => *radius,
            Primitive::Ellipsoid { shape, .. } => {
                // largest semi-axis = 1 / sqrt(smallest eigenvalue)
                let min_eig = shape.symmetric_eigenvalues().min();
                if min_eig > 0.0 {
                    1.0 / min_eig.sqrt()
                } else {
                    1.0
                }
            }
            _ => 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !is_finite3(&self.anchor()) {
            return Err(invalid(format!(
                "{} anchor must be finite",
                self.kind().name()
            )));
        }
        match self {
            Primitive::Point { .. } => Ok(()),
            Primitive::Line { direction: d, .. }
            | Primitive::Plane { normal: d, .. }
            | Primitive::Cylinder { axis: d, .. }
            | Primitive::Cone { axis: d, .. }
                if !is_unit(d) =>
            {
                Err(invalid(format!(
                    "{} direction must be unit norm, got norm {}",
                    self.kind().name(),
                    d.norm()
                )))
            }
            Primitive::Sphere { radius, .. } | Primitive::Cylinder { radius, .. }
                if !(radius.is_finite() && *radius > 0.0) =>
            {
                Err(invalid(format!(
                    "{} radius must be positive, got {radius}",
                    self.kind().name()
                )))
            }
            Primitive::Cone { half_angle, .. }
                if !(*half_angle > 0.0 && *half_angle < std::f64::consts::FRAC_PI_2) =>
            {
                Err(invalid(format!(
                    "cone half angle must lie in (0, π/2), got {half_angle}"
                )))
            }
            Primitive::Ellipsoid { shape, .. } => {
                if !shape.iter().all(|c| c.is_finite()) {
                    return Err(invalid("ellipsoid matrix must be finite"));
                }
                let asym = (shape - shape.transpose()).amax();
                if asym > 1e-9 * shape.amax().max(1.0) {
                    return Err(invalid("ellipsoid matrix must be symmetric"));
                }
                if shape.cholesky().is_none() {
                    return Err(invalid("ellipsoid matrix must be positive definite"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Distance-like residual of `p` from the primitive's defining equation;
    /// zero when `p` belongs to the primitive. For the ellipsoid this is the
    /// amount by which `(p − c)ᵀ A (p − c)` exceeds 1 (zero inside).
    pub fn membership_residual(&self, p: &Vec3) -> f64 {
        match self {
            Primitive::Point { position } => (p - position).norm(),
            Primitive::Line { point, direction } => {
                let d = p - point;
                (d - direction * direction.dot(&d)).norm()
            }
            Primitive::Plane { point, normal } => normal.dot(&(p - point)).abs(),
            Primitive::Sphere { center, radius } => ((p - center).norm() - radius).abs(),
            Primitive::Cylinder {
                point,
                axis,
                radius,
            } => {
                let d = p - point;
                ((d - axis * axis.dot(&d)).norm() - radius).abs()
            }
            Primitive::Cone {
                apex,
                axis,
                half_angle,
            } => {
                let d = p - apex;
                (axis.dot(&d) - half_angle.cos() * d.norm()).abs()
            }
            Primitive::Ellipsoid { center, shape } => {
                let d = p - center;
                (d.dot(&(shape * d)) - 1.0).max(0.0)
            }
        }
    }

    /// Membership test with tolerance `tol` scaled by [`Primitive::scale`].
    pub fn contains(&self, p: &Vec3, tol: f64) -> bool {
        self.membership_residual(p) <= tol * self.scale()
    }
}

fn normalize_dir(d: Vec3) -> Result<Vec3> {
    let n = d.norm();
    if !(n.is_finite() && n > 0.0) {
        return Err(invalid("direction vector must be finite and nonzero"));
    }
    Ok(d / n)
}

/// Action of a rigid transformation on a primitive: anchors move by the full
/// transform, directions by the rotation only, and the ellipsoid matrix is
/// conjugated `R A Rᵀ`.
pub fn transform_primitive(t: &RigidTransform, x: &Primitive) -> Primitive {
    let r = &t.rotation;
    match x {
        Primitive::Point { position } => Primitive::Point {
            position: t.apply(position),
        },
        Primitive::Line { point, direction } => Primitive::Line {
            point: t.apply(point),
            direction: r * direction,
        },
        Primitive::Plane { point, normal } => Primitive::Plane {
            point: t.apply(point),
            normal: r * normal,
        },
        Primitive::Sphere { center, radius } => Primitive::Sphere {
            center: t.apply(center),
            radius: *radius,
        },
        Primitive::Cylinder {
            point,
            axis,
            radius,
        } => Primitive::Cylinder {
            point: t.apply(point),
            axis: r * axis,
            radius: *radius,
        },
        Primitive::Cone {
            apex,
            axis,
            half_angle,
        } => Primitive::Cone {
            apex: t.apply(apex),
            axis: r * axis,
            half_angle: *half_angle,
        },
        Primitive::Ellipsoid { center, shape } => Primitive::Ellipsoid {
            center: t.apply(center),
            shape: r * shape * r.transpose(),
        },
    }
}
