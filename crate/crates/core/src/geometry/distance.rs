//! Closed-form and root-finding shortest-distance pairs between a point (or
//! an ellipsoid) and the supported target primitives.

use nalgebra::Cholesky;

use super::{is_finite3, orthogonal_unit, rodrigues, Mat3, Primitive, Vec3};
use crate::error::{Error, Result};

/// Points on `X` and `Y` that attain the shortest distance between them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistancePair {
    pub x_point: Vec3,
    pub y_point: Vec3,
    pub distance: f64,
    /// Set when the set of attaining pairs is not a singleton; the returned
    /// pair is then a fixed representative.
    pub degenerate: bool,
}

impl DistancePair {
    fn new(x_point: Vec3, y_point: Vec3, degenerate: bool) -> Self {
        DistancePair {
            x_point,
            y_point,
            distance: (x_point - y_point).norm(),
            degenerate,
        }
    }
}

/// Residual tolerance required of the ellipsoid root finders.
pub const ROOT_TOL: f64 = 1e-12;
const MAX_NEWTON: usize = 100;
const MAX_BISECT: usize = 2000;

fn near_zero(d: f64, scale: f64) -> bool {
    d <= 1e-12 * (1.0 + scale)
}

/// Shortest-distance pair between `x` and `y`.
///
/// `x` must be a point (any target) or an ellipsoid (line target only).
pub fn shortest_distance_pair(x: &Primitive, y: &Primitive) -> Result<DistancePair> {
    x.validate()?;
    y.validate()?;
    pair_unchecked(x, y)
}

/// [`shortest_distance_pair`] without re-validating the primitives.
pub(crate) fn pair_unchecked(x: &Primitive, y: &Primitive) -> Result<DistancePair> {
    match (x, y) {
        (Primitive::Point { position }, _) => point_to(position, y),
        (Primitive::Ellipsoid { center, shape }, Primitive::Line { point, direction }) => {
            ellipsoid_line(center, shape, point, direction)
        }
        _ => Err(Error::UnsupportedPair {
            x: x.kind().name(),
            y: y.kind().name(),
        }),
    }
}

fn point_to(x: &Vec3, y: &Primitive) -> Result<DistancePair> {
    let pair = match y {
        Primitive::Point { position } => DistancePair::new(*x, *position, false),
        Primitive::Line { point, direction } => {
            let alpha = direction.dot(&(x - point));
            DistancePair::new(*x, point + direction * alpha, false)
        }
        Primitive::Plane { point, normal } => {
            let alpha = normal.dot(&(point - x));
            DistancePair::new(*x, x + normal * alpha, false)
        }
        Primitive::Sphere { center, radius } => {
            let d = x - center;
            let n = d.norm();
            if near_zero(n, *radius) {
                DistancePair::new(*x, center + Vec3::x() * *radius, true)
            } else {
                DistancePair::new(*x, center + d * (radius / n), false)
            }
        }
        Primitive::Cylinder {
            point,
            axis,
            radius,
        } => {
            let foot = point + axis * axis.dot(&(x - point));
            let radial = x - foot;
            let n = radial.norm();
            if near_zero(n, (x - point).norm()) {
                DistancePair::new(*x, foot + orthogonal_unit(axis) * *radius, true)
            } else {
                DistancePair::new(*x, foot + radial * (radius / n), false)
            }
        }
        Primitive::Cone {
            apex,
            axis,
            half_angle,
        } => point_cone(x, apex, axis, *half_angle),
        Primitive::Ellipsoid { center, shape } => point_ellipsoid(x, center, shape)?,
    };
    Ok(pair)
}

fn point_cone(x: &Vec3, apex: &Vec3, axis: &Vec3, theta: f64) -> DistancePair {
    let xy = x - apex;
    let n = xy.norm();
    let (s, c) = theta.sin_cos();
    if axis.dot(&xy) <= -n * s {
        // dual cone, including the apex itself
        return DistancePair::new(*x, *apex, false);
    }
    let cross = axis.cross(&xy);
    if near_zero(cross.norm(), n) {
        // on the axis inside the cone: a whole circle attains the minimum
        let u = orthogonal_unit(axis);
        let y = apex + (axis * c + u * s) * (n * c);
        return DistancePair::new(*x, y, true);
    }
    let w = rodrigues(&cross.normalize(), theta) * axis;
    let alpha = w.dot(&xy);
    DistancePair::new(*x, apex + w * alpha, false)
}

fn point_ellipsoid(x: &Vec3, center: &Vec3, shape: &Mat3) -> Result<DistancePair> {
    let xy = x - center;
    if xy.dot(&(shape * xy)) <= 1.0 {
        return Ok(DistancePair::new(*x, *x, true));
    }
    let lambda = pe_root_find(&xy, shape)?;
    let z = pe_z(&xy, shape, lambda)?;
    Ok(DistancePair::new(*x, center + z, false))
}

fn chol_solve(m: Mat3, b: &Vec3) -> Result<Vec3> {
    let chol = Cholesky::new(m)
        .ok_or_else(|| Error::Numeric("3x3 system is not positive definite".into()))?;
    Ok(chol.solve(b))
}

fn pe_z(xy: &Vec3, a: &Mat3, lambda: f64) -> Result<Vec3> {
    chol_solve(a * lambda + Mat3::identity(), xy)
}

/// `g(λ) = z(λ)ᵀ A z(λ) − 1` with `z(λ) = (λA + I)⁻¹ x_y`, and its derivative.
pub fn pe_residual(xy: &Vec3, a: &Mat3, lambda: f64) -> Result<(f64, f64)> {
    let m = a * lambda + Mat3::identity();
    let chol =
        Cholesky::new(m).ok_or_else(|| Error::Numeric("λA + I is not positive definite".into()))?;
    let z = chol.solve(xy);
    let az = a * z;
    let g = z.dot(&az) - 1.0;
    let dg = -2.0 * az.dot(&chol.solve(&az));
    Ok((g, dg))
}

/// Multiplier `λ > 0` locating the projection of an outside point onto the
/// ellipsoid `{z : zᵀ A z ≤ 1}`; `x_y` is the point relative to the center.
pub fn pe_root_find(xy: &Vec3, a: &Mat3) -> Result<f64> {
    if !is_finite3(xy) {
        return Err(Error::InvalidInput("point must be finite".into()));
    }
    if xy.dot(&(a * xy)) <= 1.0 {
        return Err(Error::Precondition(
            "point is not strictly outside the ellipsoid".into(),
        ));
    }
    monotone_root(|l| pe_residual(xy, a, l), 0.0)
}

/// Solution of the ellipsoid–line stationarity system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElRoot {
    pub lambda: f64,
    /// Closest point on the ellipsoid, relative to its center.
    pub z: Vec3,
    /// Line parameter of the closest point on the line.
    pub alpha: f64,
}

fn projector(v: &Vec3) -> Mat3 {
    Mat3::identity() - v * v.transpose()
}

/// `g(λ) = z(λ)ᵀ A z(λ) − 1` with `z(λ) = (λA + V)⁻¹ V y_x`, `V = I − vvᵀ`,
/// and its derivative.
pub fn el_residual(yx: &Vec3, v: &Vec3, a: &Mat3, lambda: f64) -> Result<(f64, f64)> {
    let p = projector(v);
    let chol = Cholesky::new(a * lambda + p)
        .ok_or_else(|| Error::Numeric("λA + V is not positive definite".into()))?;
    let z = chol.solve(&(p * yx));
    let az = a * z;
    let g = z.dot(&az) - 1.0;
    let dg = -2.0 * az.dot(&chol.solve(&az));
    Ok((g, dg))
}

/// Line–ellipsoid intersection quadratic: returns `(b, a, disc)` for
/// `a α² + 2 b α + c = 0` with `disc = b² − a c`.
fn el_quadratic(yx: &Vec3, v: &Vec3, a: &Mat3) -> (f64, f64, f64) {
    let av = a * v;
    let b = yx.dot(&av);
    let qa = v.dot(&av);
    let qc = yx.dot(&(a * yx)) - 1.0;
    (b, qa, b * b - qa * qc)
}

/// Closest points between a non-intersecting line `y_x + α v` (relative to
/// the ellipsoid center) and the ellipsoid `{z : zᵀ A z ≤ 1}`.
pub fn el_root_find(yx: &Vec3, v: &Vec3, a: &Mat3) -> Result<ElRoot> {
    if !is_finite3(yx) {
        return Err(Error::InvalidInput("line point must be finite".into()));
    }
    let (_, _, disc) = el_quadratic(yx, v, a);
    if disc >= 0.0 {
        return Err(Error::Precondition("line intersects the ellipsoid".into()));
    }
    let lambda = monotone_root(|l| el_residual(yx, v, a, l), 1e-6)?;
    let p = projector(v);
    let z = chol_solve(a * lambda + p, &(p * yx))?;
    let alpha = v.dot(&(z - yx));
    Ok(ElRoot { lambda, z, alpha })
}

fn ellipsoid_line(center: &Vec3, shape: &Mat3, point: &Vec3, dir: &Vec3) -> Result<DistancePair> {
    let yx = point - center;
    let (b, qa, disc) = el_quadratic(&yx, dir, shape);
    if disc >= 0.0 {
        // midpoint of the chord (α₁ + α₂)/2
        let p = point + dir * (-b / qa);
        return Ok(DistancePair::new(p, p, disc > 0.0));
    }
    let root = el_root_find(&yx, dir, shape)?;
    Ok(DistancePair::new(
        center + root.z,
        point + dir * root.alpha,
        false,
    ))
}

/// Root of a strictly decreasing `g` on `(0, ∞)` with `g(∞) < 0`.
///
/// Newton from `lambda0`; if an iterate leaves `(0, ∞)`, stalls, or the
/// iteration budget runs out, falls back to bisection on a bracket grown by
/// doubling.
fn monotone_root<F>(g: F, lambda0: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let mut lambda = lambda0;
    for _ in 0..MAX_NEWTON {
        let (gv, dg) = g(lambda)?;
        if gv.abs() < ROOT_TOL && lambda > 0.0 {
            return Ok(lambda);
        }
        if !(dg < 0.0) || !dg.is_finite() {
            break;
        }
        let next = lambda - gv / dg;
        if !(next.is_finite() && next > 0.0) || (next - lambda).abs() <= f64::EPSILON * lambda {
            break;
        }
        lambda = next;
    }
    bisect(&g, lambda0)
}

fn bisect<F>(g: &F, lambda0: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let mut hi = lambda0.max(1.0);
    while g(hi)?.0 >= 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Numeric("no upper bracket for monotone root".into()));
        }
    }
    let mut lo = if lambda0 > 0.0 {
        lambda0.min(hi * 0.5)
    } else {
        0.0
    };
    // lo must satisfy g(lo) > 0; shrink towards zero if needed
    while lo > 0.0 && g(lo)?.0 <= 0.0 {
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            lo = 0.0;
        }
    }
    let mut best = hi;
    let mut best_g = f64::INFINITY;
    for _ in 0..MAX_BISECT {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (gm, _) = g(mid)?;
        if gm.abs() < best_g {
            best = mid;
            best_g = gm.abs();
        }
        if gm.abs() < ROOT_TOL {
            return Ok(mid);
        }
        if gm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if best_g.is_finite() && best > 0.0 {
        // interval collapsed to adjacent floats; this is the best attainable root
        Ok(best)
    } else {
        Err(Error::Numeric("bisection failed to locate a root".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_4;

    fn pair(x: Primitive, y: Primitive) -> DistancePair {
        shortest_distance_pair(&x, &y).unwrap()
    }

    #[test]
    fn point_point() {
        let d = pair(Primitive::point(Vec3::x()), Primitive::point(Vec3::zeros()));
        assert_eq!(d.distance, 1.0);
        assert_eq!(d.y_point, Vec3::zeros());
    }

    #[test]
    fn point_plane_projection() {
        let d = pair(
            Primitive::point(Vec3::new(1.0, 2.0, 3.0)),
            Primitive::plane(Vec3::zeros(), Vec3::z()).unwrap(),
        );
        assert_relative_eq!(d.y_point, Vec3::new(1.0, 2.0, 0.0));
        assert_relative_eq!(d.distance, 3.0);
    }

    #[test]
    fn point_cylinder_radial() {
        let d = pair(
            Primitive::point(Vec3::new(2.0, 0.0, 5.0)),
            Primitive::cylinder(Vec3::zeros(), Vec3::z(), 1.0).unwrap(),
        );
        assert_relative_eq!(d.y_point, Vec3::new(1.0, 0.0, 5.0));
        assert_relative_eq!(d.distance, 1.0);
        assert!(!d.degenerate);
    }

    #[test]
    fn point_cylinder_on_axis_is_degenerate() {
        let d = pair(
            Primitive::point(Vec3::new(0.0, 0.0, 2.0)),
            Primitive::cylinder(Vec3::zeros(), Vec3::z(), 1.5).unwrap(),
        );
        assert!(d.degenerate);
        assert_relative_eq!(d.distance, 1.5);
        assert_relative_eq!(d.y_point, Vec3::new(1.5, 0.0, 2.0));
    }

    #[test]
    fn point_sphere_center_is_degenerate() {
        let d = pair(
            Primitive::point(Vec3::new(1.0, 1.0, 1.0)),
            Primitive::sphere(Vec3::new(1.0, 1.0, 1.0), 2.0).unwrap(),
        );
        assert!(d.degenerate);
        assert_eq!(d.y_point, Vec3::new(3.0, 1.0, 1.0));
    }

    #[test]
    fn point_cone_cases() {
        let cone = Primitive::cone(Vec3::zeros(), Vec3::z(), FRAC_PI_4).unwrap();
        let d = pair(Primitive::point(Vec3::new(0.0, 0.0, -1.0)), cone.clone());
        assert_eq!(d.y_point, Vec3::zeros());
        assert_relative_eq!(d.distance, 1.0);
        assert!(!d.degenerate);

        let d = pair(Primitive::point(Vec3::z()), cone.clone());
        assert!(d.degenerate);
        assert_relative_eq!(d.distance, FRAC_PI_4.sin(), epsilon = 1e-15);
        assert!(cone.membership_residual(&d.y_point) < 1e-15);

        // off-axis outside point: foot on the generator in the same half-plane
        let d = pair(Primitive::point(Vec3::new(2.0, 0.0, 0.0)), cone.clone());
        assert_relative_eq!(d.y_point, Vec3::new(1.0, 0.0, 1.0), epsilon = 1e-15);
        // off-axis inside point
        let d = pair(Primitive::point(Vec3::new(0.5, 0.0, 3.0)), cone);
        assert_relative_eq!(d.y_point, Vec3::new(1.75, 0.0, 1.75), epsilon = 1e-14);
    }

    #[test]
    fn point_ellipsoid_sphere_case() {
        let e = Primitive::ellipsoid(Vec3::zeros(), Mat3::identity()).unwrap();
        let d = pair(Primitive::point(Vec3::new(2.0, 0.0, 0.0)), e.clone());
        assert_relative_eq!(d.y_point, Vec3::x(), epsilon = 1e-12);
        assert_relative_eq!(d.distance, 1.0, epsilon = 1e-12);
        let lambda = pe_root_find(&Vec3::new(2.0, 0.0, 0.0), &Mat3::identity()).unwrap();
        assert_relative_eq!(lambda, 1.0, epsilon = 1e-12);

        let inside = pair(Primitive::point(Vec3::new(0.1, 0.2, 0.0)), e);
        assert_eq!(inside.distance, 0.0);
        assert!(inside.degenerate);
    }

    #[test]
    fn pe_axis_aligned() {
        let a = Mat3::from_diagonal(&Vec3::new(0.25, 1.0, 1.0));
        let lambda = pe_root_find(&Vec3::new(4.0, 0.0, 0.0), &a).unwrap();
        assert_relative_eq!(lambda, 4.0, epsilon = 1e-10);
        assert!(pe_root_find(&Vec3::new(1.0, 0.0, 0.0), &a).is_err());
    }

    #[test]
    fn ellipsoid_line_cases() {
        let e = Primitive::ellipsoid(Vec3::zeros(), Mat3::identity()).unwrap();
        let d = pair(
            e.clone(),
            Primitive::line(Vec3::new(0.0, 2.0, 0.0), Vec3::x()).unwrap(),
        );
        assert_relative_eq!(d.x_point, Vec3::y(), epsilon = 1e-12);
        assert_relative_eq!(d.y_point, Vec3::new(0.0, 2.0, 0.0), epsilon = 1e-12);
        assert_relative_eq!(d.distance, 1.0, epsilon = 1e-12);
        let root = el_root_find(&Vec3::new(0.0, 2.0, 0.0), &Vec3::x(), &Mat3::identity()).unwrap();
        assert_relative_eq!(root.lambda, 1.0, epsilon = 1e-10);
        assert!(root.alpha.abs() < 1e-12);

        let d = pair(
            e,
            Primitive::line(Vec3::new(0.0, 0.0, 0.5), Vec3::x()).unwrap(),
        );
        assert_eq!(d.distance, 0.0);
        assert!(d.degenerate);
        assert!(d.x_point.norm() <= 1.0);
        assert!(el_root_find(&Vec3::new(0.0, 0.0, 0.5), &Vec3::x(), &Mat3::identity()).is_err());
    }

    #[test]
    fn unsupported_pairs() {
        let l = Primitive::line(Vec3::zeros(), Vec3::x()).unwrap();
        let e = Primitive::ellipsoid(Vec3::zeros(), Mat3::identity()).unwrap();
        assert!(matches!(
            shortest_distance_pair(&l, &l),
            Err(Error::UnsupportedPair { .. })
        ));
        assert!(matches!(
            shortest_distance_pair(&e, &Primitive::point(Vec3::zeros())),
            Err(Error::UnsupportedPair { .. })
        ));
    }
}
