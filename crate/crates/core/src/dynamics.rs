//! Rigid body made of `N` equal point masses, driven by external forces and
//! a constant linear damping.
//!
//! The state is `s = (x_c, q, v_c, ω)`: center of mass, body-to-world
//! quaternion (scalar last), linear velocity, and angular velocity in the
//! body frame.

use nalgebra::SVector;

use crate::error::{invalid, Error, Result};
use crate::geometry::{hat, homogenize, quat_multiply, DistancePair, Mat3, UnitQuat, Vec3};

pub type StateVector = SVector<f64, 13>;

/// Mass distribution of the moving body, fixed at construction.
#[derive(Clone, Debug)]
pub struct BodyModel {
    /// Initial center of mass.
    pub x_bar: Vec3,
    /// Offsets of each point mass from `x_bar`, in the body frame.
    pub x_ref: Vec<Vec3>,
    /// Moment of inertia `J = −m Σ [x_ref]×²` (body frame).
    pub inertia: Mat3,
    /// Lower-triangular Cholesky factor `L` of `J`.
    pub inertia_factor: Mat3,
    pub mass: f64,
    pub total_mass: f64,
}

impl BodyModel {
    pub fn len(&self) -> usize {
        self.x_ref.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_ref.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BodyState {
    pub x_c: Vec3,
    pub q: UnitQuat,
    pub v_c: Vec3,
    pub omega: Vec3,
}

impl BodyState {
    /// The body at rest with its frame aligned to the world frame.
    pub fn rest(x_bar: Vec3) -> Self {
        BodyState {
            x_c: x_bar,
            q: UnitQuat::IDENTITY,
            v_c: Vec3::zeros(),
            omega: Vec3::zeros(),
        }
    }

    pub fn to_vector(&self) -> StateVector {
        let mut s = StateVector::zeros();
        s.fixed_rows_mut::<3>(0).copy_from(&self.x_c);
        s.fixed_rows_mut::<3>(3).copy_from(&self.q.v);
        s[6] = self.q.w;
        s.fixed_rows_mut::<3>(7).copy_from(&self.v_c);
        s.fixed_rows_mut::<3>(10).copy_from(&self.omega);
        s
    }

    /// Inverse of [`BodyState::to_vector`]; the quaternion is taken as is.
    pub fn from_vector(s: &StateVector) -> Self {
        BodyState {
            x_c: s.fixed_rows::<3>(0).into(),
            q: UnitQuat {
                v: s.fixed_rows::<3>(3).into(),
                w: s[6],
            },
            v_c: s.fixed_rows::<3>(7).into(),
            omega: s.fixed_rows::<3>(10).into(),
        }
    }

    pub fn rotation(&self) -> Mat3 {
        self.q.to_rotmat()
    }

    /// World position of point mass `i`.
    pub fn mass_position(&self, body: &BodyModel, i: usize) -> Vec3 {
        self.x_c + self.rotation() * body.x_ref[i]
    }
}

/// External forces `f_i` (world frame) and where they act.
#[derive(Clone, Debug, Default)]
pub struct ForceSet {
    pub forces: Vec<Vec3>,
    pub points: Vec<Vec3>,
}

impl ForceSet {
    pub fn new(forces: Vec<Vec3>, points: Vec<Vec3>) -> Result<Self> {
        if forces.len() != points.len() {
            return Err(invalid(format!(
                "{} forces but {} application points",
                forces.len(),
                points.len()
            )));
        }
        Ok(ForceSet { forces, points })
    }

    pub fn len(&self) -> usize {
        self.forces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forces.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DynamicsParams {
    /// Damping coefficient `μ`.
    pub mu: f64,
    /// Mass `m` of each point mass.
    pub mass: f64,
    /// Spring coefficient `k`.
    pub spring: f64,
}

impl Default for DynamicsParams {
    fn default() -> Self {
        DynamicsParams {
            mu: 2.0,
            mass: 1.0,
            spring: 2.0,
        }
    }
}

impl DynamicsParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mu", self.mu),
            ("mass", self.mass),
            ("spring", self.spring),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Builds the rigid body from the point-mass locations.
///
/// Fails with [`Error::SingularInertia`] when the points are (nearly)
/// collinear, since the rotation about that line is then unconstrained.
pub fn build_body(points: &[Vec3], mass: f64) -> Result<BodyModel> {
    if points.len() < 3 {
        return Err(Error::SingularInertia(format!(
            "need at least 3 point masses, got {}",
            points.len()
        )));
    }
    if !(mass.is_finite() && mass > 0.0) {
        return Err(invalid(format!("mass must be positive, got {mass}")));
    }
    if points.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(invalid("point mass locations must be finite"));
    }
    let n = points.len() as f64;
    let x_bar = points.iter().sum::<Vec3>() / n;
    let x_ref: Vec<Vec3> = points.iter().map(|p| p - x_bar).collect();
    let mut inertia = Mat3::zeros();
    for r in &x_ref {
        let h = hat(r);
        inertia -= h * h * mass;
    }
    inertia = 0.5 * (inertia + inertia.transpose());

    let trace = inertia.trace();
    let min_eig = inertia.symmetric_eigenvalues().min();
    if !(trace > 0.0) || min_eig <= 1e-10 * trace {
        return Err(Error::SingularInertia(format!(
            "inertia is not positive definite (smallest eigenvalue {min_eig:e}, trace {trace:e})"
        )));
    }
    let inertia_factor = inertia
        .cholesky()
        .ok_or_else(|| Error::SingularInertia("Cholesky factorization of inertia failed".into()))?
        .l();
    Ok(BodyModel {
        x_bar,
        x_ref,
        inertia,
        inertia_factor,
        mass,
        total_mass: n * mass,
    })
}

/// Damped per-mass forces `f_i′ = f_i − μ m (v_c + R(ω × x_ref_i))` and
/// their sum.
pub fn total_force(
    state: &BodyState,
    forces: &ForceSet,
    body: &BodyModel,
    params: &DynamicsParams,
) -> (Vec3, Vec<Vec3>) {
    let r = state.rotation();
    let damping = params.mu * params.mass;
    let f_prime: Vec<Vec3> = forces
        .forces
        .iter()
        .zip(&body.x_ref)
        .map(|(f, x_ref)| f - (state.v_c + r * state.omega.cross(x_ref)) * damping)
        .collect();
    let total = f_prime.iter().sum();
    (total, f_prime)
}

/// Body-frame torque `Σ Rᵀ(x̲_i − x_c) × Rᵀ f_i′` about the center of mass.
pub fn total_torque(state: &BodyState, f_prime: &[Vec3], forces: &ForceSet) -> Vec3 {
    let rt = state.rotation().transpose();
    f_prime
        .iter()
        .zip(&forces.points)
        .map(|(f, p)| (rt * (p - state.x_c)).cross(&(rt * f)))
        .sum()
}

/// `ω̇ = J⁻¹(τ − ω × Jω)` via forward and back substitution with `L`.
pub fn angular_acceleration(body: &BodyModel, omega: &Vec3, tau: &Vec3) -> Vec3 {
    let rhs = tau - omega.cross(&(body.inertia * omega));
    let l = &body.inertia_factor;
    let y = l
        .solve_lower_triangular(&rhs)
        .expect("inertia factor has a nonzero diagonal");
    l.tr_solve_lower_triangular(&y)
        .expect("inertia factor has a nonzero diagonal")
}

/// Time derivative of the 13-dimensional state.
pub fn state_derivative(
    state: &BodyState,
    forces: &ForceSet,
    body: &BodyModel,
    params: &DynamicsParams,
) -> StateVector {
    let (f, f_prime) = total_force(state, forces, body, params);
    let tau = total_torque(state, &f_prime, forces);
    let q_dot = quat_multiply(&state.q, &homogenize(&state.omega));
    let alpha = angular_acceleration(body, &state.omega, &tau);
    let mut s = StateVector::zeros();
    s.fixed_rows_mut::<3>(0).copy_from(&state.v_c);
    s.fixed_rows_mut::<3>(3).copy_from(&(q_dot.v * 0.5));
    s[6] = 0.5 * q_dot.w;
    s.fixed_rows_mut::<3>(7).copy_from(&(f / body.total_mass));
    s.fixed_rows_mut::<3>(10).copy_from(&alpha);
    s
}

/// Kinetic energy `½M‖v_c‖² + ½ωᵀJω`.
pub fn kinetic_energy(state: &BodyState, body: &BodyModel) -> f64 {
    0.5 * body.total_mass * state.v_c.norm_squared()
        + 0.5 * state.omega.dot(&(body.inertia * state.omega))
}

/// Spring potential `(k/2) Σ ‖y̲_i − x̲_i‖²`.
pub fn potential_energy(pairs: &[DistancePair], k: f64) -> f64 {
    0.5 * k * pairs.iter().map(|p| p.distance * p.distance).sum::<f64>()
}

/// `(kinetic, potential)` energy of the body and its springs.
pub fn energies(state: &BodyState, body: &BodyModel, pairs: &[DistancePair], k: f64) -> (f64, f64) {
    (kinetic_energy(state, body), potential_energy(pairs, k))
}
