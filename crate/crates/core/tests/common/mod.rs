//! Random primitive instances and brute-force distance oracles shared by the
//! integration tests. The oracles sample each primitive through its own
//! parametrization, so they share no code with the library kernels.

#![allow(dead_code)]

use damp::geometry::{Mat3, Primitive, Vec3};
use damp::harness::{random_rotation, random_unit_vector};
use rand::Rng;
use std::f64::consts::PI;

pub const PAIRINGS: [&str; 8] = ["PP", "PL", "PH", "PS", "PC", "PK", "PE", "EL"];

/// An ellipsoid kept with its principal frame for surface sampling.
#[derive(Clone, Debug)]
pub struct Ellipsoid {
    pub center: Vec3,
    pub rotation: Mat3,
    pub axes: Vec3,
}

impl Ellipsoid {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        Ellipsoid {
            center: uniform(rng, 2.0),
            rotation: random_rotation(rng),
            axes: Vec3::from_fn(|_, _| rng.random_range(0.3..3.0)),
        }
    }

    /// `A = R diag(1/a²) Rᵀ`.
    pub fn matrix(&self) -> Mat3 {
        self.rotation
            * Mat3::from_diagonal(&self.axes.map(|a| 1.0 / (a * a)))
            * self.rotation.transpose()
    }

    pub fn primitive(&self) -> Primitive {
        Primitive::ellipsoid(self.center, self.matrix()).unwrap()
    }

    pub fn surface(&self, u: &Vec3) -> Vec3 {
        self.center + self.rotation * u.component_mul(&self.axes)
    }
}

pub fn uniform<R: Rng>(rng: &mut R, half: f64) -> Vec3 {
    Vec3::from_fn(|_, _| rng.random_range(-half..=half))
}

fn basis(n: &Vec3) -> (Vec3, Vec3) {
    let seed = if n.x.abs() < 0.6 {
        Vec3::x()
    } else {
        Vec3::y()
    };
    let e1 = n.cross(&seed).normalize();
    (e1, n.cross(&e1))
}

fn fibonacci_sphere(count: usize) -> impl Iterator<Item = Vec3> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count).map(move |i| {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
        let r = (1.0 - z * z).sqrt();
        let a = golden * i as f64;
        Vec3::new(r * a.cos(), r * a.sin(), z)
    })
}

fn grid(count: usize) -> usize {
    (count as f64).sqrt().ceil() as usize
}

fn line_distance(p: &Vec3, point: &Vec3, dir: &Vec3) -> f64 {
    let d = p - point;
    (d - dir * dir.dot(&d)).norm()
}

/// One random instance of a pairing: the source primitive, the target, and
/// the ellipsoid frame when one is involved.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    pairing: &str,
) -> (Primitive, Primitive, Option<Ellipsoid>) {
    let x = Primitive::point(uniform(rng, 5.0));
    let anchor = uniform(rng, 2.0);
    let dir = random_unit_vector(rng);
    match pairing {
        "PP" => (x, Primitive::point(anchor), None),
        "PL" => (x, Primitive::line(anchor, dir).unwrap(), None),
        "PH" => (x, Primitive::plane(anchor, dir).unwrap(), None),
        "PS" => (
            x,
            Primitive::sphere(anchor, rng.random_range(0.5..3.0)).unwrap(),
            None,
        ),
        "PC" => (
            x,
            Primitive::cylinder(anchor, dir, rng.random_range(0.5..3.0)).unwrap(),
            None,
        ),
        "PK" => (
            x,
            Primitive::cone(anchor, dir, rng.random_range(0.1..1.4)).unwrap(),
            None,
        ),
        "PE" => {
            let e = Ellipsoid::random(rng);
            (x, e.primitive(), Some(e))
        }
        "EL" => {
            let e = Ellipsoid::random(rng);
            let line = Primitive::line(uniform(rng, 5.0), dir).unwrap();
            (e.primitive(), line, Some(e))
        }
        other => panic!("unknown pairing {other}"),
    }
}

/// Minimum distance over about `count` sampled pairs of points; an upper
/// bound on the true shortest distance.
pub fn brute_force(
    x: &Primitive,
    y: &Primitive,
    ellipsoid: Option<&Ellipsoid>,
    count: usize,
) -> f64 {
    let m = grid(count);
    let unit = |i: usize| i as f64 / (m - 1) as f64;
    if let (Primitive::Ellipsoid { .. }, Primitive::Line { point, direction }) = (x, y) {
        let e = ellipsoid.expect("ellipsoid frame");
        return fibonacci_sphere(count)
            .map(|u| line_distance(&e.surface(&u), point, direction))
            .fold(f64::INFINITY, f64::min);
    }
    let Primitive::Point { position: p } = x else {
        panic!("unsupported source primitive");
    };
    match y {
        Primitive::Point { position } => (p - position).norm(),
        Primitive::Line { point, direction } => {
            let l = (p - point).norm() + 1.0;
            (0..count)
                .map(|i| {
                    let a = -l + 2.0 * l * i as f64 / (count - 1) as f64;
                    (p - (point + direction * a)).norm()
                })
                .fold(f64::INFINITY, f64::min)
        }
        Primitive::Plane { point, normal } => {
            let l = (p - point).norm() + 1.0;
            let (e1, e2) = basis(normal);
            let mut best = f64::INFINITY;
            for i in 0..m {
                for j in 0..m {
                    let q =
                        point + e1 * (l * (2.0 * unit(i) - 1.0)) + e2 * (l * (2.0 * unit(j) - 1.0));
                    best = best.min((p - q).norm());
                }
            }
            best
        }
        Primitive::Sphere { center, radius } => fibonacci_sphere(count)
            .map(|u| (p - (center + u * *radius)).norm())
            .fold(f64::INFINITY, f64::min),
        Primitive::Cylinder {
            point,
            axis,
            radius,
        } => {
            let l = (p - point).norm() + 1.0;
            let (e1, e2) = basis(axis);
            let mut best = f64::INFINITY;
            for i in 0..m {
                for j in 0..m {
                    let h = l * (2.0 * unit(i) - 1.0);
                    let a = 2.0 * PI * j as f64 / m as f64;
                    let q = point + axis * h + (e1 * a.cos() + e2 * a.sin()) * *radius;
                    best = best.min((p - q).norm());
                }
            }
            best
        }
        Primitive::Cone {
            apex,
            axis,
            half_angle,
        } => {
            let l = 2.0 * (p - apex).norm() + 1.0;
            let (e1, e2) = basis(axis);
            let (s, c) = half_angle.sin_cos();
            let mut best = (p - apex).norm();
            for i in 0..m {
                for j in 0..m {
                    let slant = l * unit(i);
                    let a = 2.0 * PI * j as f64 / m as f64;
                    let q = apex + (axis * c + (e1 * a.cos() + e2 * a.sin()) * s) * slant;
                    best = best.min((p - q).norm());
                }
            }
            best
        }
        Primitive::Ellipsoid { .. } => {
            let e = ellipsoid.expect("ellipsoid frame");
            fibonacci_sphere(count)
                .map(|u| (p - e.surface(&u)).norm())
                .fold(f64::INFINITY, f64::min)
        }
    }
}
