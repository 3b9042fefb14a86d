//! Rigid alignment of two corresponded sets of 3D geometric primitives.
//!
//! The source set is treated as a rigid body made of point masses. Each
//! corresponding pair is connected by a virtual spring that spans the
//! shortest distance between the two primitives; the body moves under the
//! spring forces and a constant damping until it settles at an equilibrium,
//! and the pose at that equilibrium is the alignment. With spring
//! coefficient `k = 2` the potential energy of the springs equals the sum of
//! squared distances being minimized.
//!
//! Modules:
//!
//! - [`geometry`]: primitives, rotations, quaternions and exact shortest
//!   distance pairs.
//! - [`dynamics`]: the N-primitive rigid body model and its state derivative.
//! - [`solver`]: the damped simulation loop, with optional random "kicks" to
//!   escape spurious equilibria.
//! - [`oracle`]: closed-form SVD registration and the equilibrium analysis
//!   for point clouds.
//! - [`sue`]: semantic uncertainty ellipsoids built from a category library.
//! - [`harness`]: seeded scenario generators, error metrics and a Monte Carlo
//!   runner.
//! - [`cli`]: file formats and the command-line front end.
//!
//! ```
//! use damp::geometry::{Primitive, RigidTransform};
//! use damp::solver::{damp_solve, Scene, SolverConfig};
//! use nalgebra::Vector3;
//!
//! let pts = [
//!     Vector3::new(0.0, 0.0, 0.0),
//!     Vector3::new(1.0, 0.0, 0.0),
//!     Vector3::new(0.0, 2.0, 0.0),
//!     Vector3::new(0.0, 0.0, 3.0),
//! ];
//! let shift = Vector3::new(0.5, -0.2, 0.1);
//! let x: Vec<_> = pts.iter().map(|p| Primitive::point(*p)).collect();
//! let y: Vec<_> = pts.iter().map(|p| Primitive::point(p + shift)).collect();
//! let scene = Scene::new(x, y).unwrap();
//! let report = damp_solve(&scene, &SolverConfig::default()).unwrap();
//! assert!((report.transform.translation - shift).norm() < 1e-5);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod oracle;
pub mod solver;
pub mod sue;

pub use error::{Error, Result};
