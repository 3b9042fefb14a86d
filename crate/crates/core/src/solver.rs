//! The damped simulation loop.
//!
//! Starting from rest, every step computes the shortest-distance pair of
//! each correspondence at the current pose, attaches a spring `k(y̲ − x̲)`,
//! evaluates the state derivative and takes a forward Euler step. The loop
//! stops once `‖ṡ‖ < ε`. With escape enabled, each equilibrium is recorded
//! and the state derivative is replaced by a standard normal kick; after the
//! kicks are used up the lowest-energy recorded equilibrium is returned.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dynamics::{
    build_body, potential_energy, state_derivative, BodyModel, BodyState, DynamicsParams, ForceSet,
    StateVector,
};
use crate::error::{invalid, Error, Result};
use crate::geometry::distance::pair_unchecked;
use crate::geometry::{
    transform_primitive, DistancePair, Primitive, PrimitiveKind, RigidTransform,
};

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Damping coefficient `μ`.
    pub mu: f64,
    /// Mass of each primitive.
    pub mass: f64,
    /// Spring coefficient `k`.
    pub spring: f64,
    pub escape_minimum: bool,
    /// Number of random kicks allowed when escaping.
    pub t_max: usize,
    /// Equilibrium threshold on `‖ṡ‖`.
    pub eps: f64,
    pub dt: f64,
    /// Maximum number of simulation steps.
    pub k_max: usize,
    pub seed: u64,
    pub record_trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mu: 2.0,
            mass: 1.0,
            spring: 2.0,
            escape_minimum: false,
            t_max: 5,
            eps: 1e-6,
            dt: 0.3,
            k_max: 1000,
            seed: 0,
            record_trace: false,
        }
    }
}

impl SolverConfig {
    pub fn params(&self) -> DynamicsParams {
        DynamicsParams {
            mu: self.mu,
            mass: self.mass,
            spring: self.spring,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params().validate()?;
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(invalid(format!("eps must be positive, got {}", self.eps)));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(invalid(format!("dt must be positive, got {}", self.dt)));
        }
        if self.k_max < 1 {
            return Err(invalid("k_max must be at least 1"));
        }
        Ok(())
    }
}

/// Corresponded source and target primitives.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    /// Source primitives, each a point or an ellipsoid.
    pub x: Vec<Primitive>,
    pub y: Vec<Primitive>,
    /// Transform that maps `x` onto `y`, when known.
    pub groundtruth: Option<RigidTransform>,
}

impl Scene {
    pub fn new(x: Vec<Primitive>, y: Vec<Primitive>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(invalid(format!(
                "{} source primitives but {} targets",
                x.len(),
                y.len()
            )));
        }
        if x.is_empty() {
            return Err(invalid("scene has no correspondences"));
        }
        for (i, (xi, yi)) in x.iter().zip(&y).enumerate() {
            xi.validate()
                .and_then(|_| yi.validate())
                .map_err(|e| invalid(format!("correspondence {i}: {e}")))?;
            let ok = match xi.kind() {
                PrimitiveKind::Point => true,
                PrimitiveKind::Ellipsoid => yi.kind() == PrimitiveKind::Line,
                _ => false,
            };
            if !ok {
                return Err(Error::UnsupportedPair {
                    x: xi.kind().name(),
                    y: yi.kind().name(),
                });
            }
        }
        Ok(Scene {
            x,
            y,
            groundtruth: None,
        })
    }

    pub fn with_groundtruth(mut self, t: RigidTransform) -> Self {
        self.groundtruth = Some(t);
        self
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Locations of the point masses: point positions and ellipsoid centers.
    pub fn anchors(&self) -> Vec<crate::geometry::Vec3> {
        self.x.iter().map(Primitive::anchor).collect()
    }

    /// Shortest-distance pairs between `T ⊗ X_i` and `Y_i`.
    pub fn pairs(&self, t: &RigidTransform) -> Result<Vec<DistancePair>> {
        self.x
            .iter()
            .zip(&self.y)
            .map(|(xi, yi)| pair_unchecked(&transform_primitive(t, xi), yi))
            .collect()
    }

    /// Alignment objective `Σ dist(T ⊗ X_i, Y_i)²`.
    pub fn cost(&self, t: &RigidTransform) -> Result<f64> {
        Ok(self.pairs(t)?.iter().map(|p| p.distance * p.distance).sum())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    MaxStepsReached,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::MaxStepsReached => "max_steps_reached",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceStep {
    pub step: usize,
    pub sdot_norm: f64,
    pub potential: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub transform: RigidTransform,
    pub status: SolveStatus,
    /// Simulation steps taken (each step evaluates `ṡ` once).
    pub iterations: usize,
    /// Alignment objective at `transform`.
    pub final_cost: f64,
    /// `(escape trial, potential energy)` of every recorded equilibrium.
    pub equilibrium_energies: Vec<(usize, f64)>,
    pub trace: Option<Vec<TraceStep>>,
    /// Body state the transform was read from.
    pub state: BodyState,
}

/// State derivative, spring pairs and potential at one state.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub sdot: StateVector,
    pub pairs: Vec<DistancePair>,
    pub potential: f64,
}

/// Pose `T = (R_q, x_c − R_q x̄)` encoded by a body state.
pub fn state_transform(state: &BodyState, body: &BodyModel) -> RigidTransform {
    let r = state.rotation();
    RigidTransform {
        rotation: r,
        translation: state.x_c - r * body.x_bar,
    }
}

/// Computes spring forces at `state` and the resulting state derivative.
pub fn evaluate(
    state: &BodyState,
    scene: &Scene,
    body: &BodyModel,
    params: &DynamicsParams,
) -> Result<Evaluation> {
    let t = state_transform(state, body);
    let pairs = scene.pairs(&t)?;
    let forces = ForceSet {
        forces: pairs
            .iter()
            .map(|p| (p.y_point - p.x_point) * params.spring)
            .collect(),
        points: pairs.iter().map(|p| p.x_point).collect(),
    };
    let sdot = state_derivative(state, &forces, body, params);
    let potential = potential_energy(&pairs, params.spring);
    Ok(Evaluation {
        sdot,
        pairs,
        potential,
    })
}

/// Forward Euler update followed by quaternion renormalization.
pub fn advance(state: &BodyState, sdot: &StateVector, dt: f64) -> BodyState {
    let mut next = BodyState::from_vector(&(state.to_vector() + sdot * dt));
    next.q = next.q.normalized();
    next
}

/// One unperturbed simulation step: returns the new state, `‖ṡ‖` and the
/// potential energy of the springs used for the step.
pub fn damp_step(
    state: &BodyState,
    scene: &Scene,
    body: &BodyModel,
    config: &SolverConfig,
) -> Result<(BodyState, f64, f64)> {
    let ev = evaluate(state, scene, body, &config.params())?;
    Ok((
        advance(state, &ev.sdot, config.dt),
        ev.sdot.norm(),
        ev.potential,
    ))
}

/// A fresh standard normal 13-vector that replaces `ṡ` for one step.
pub fn perturb_derivative<R: Rng + ?Sized>(rng: &mut R) -> StateVector {
    StateVector::from_fn(|_, _| rng.sample(StandardNormal))
}

/// Runs the damped simulation and reads the pose off the final equilibrium.
pub fn damp_solve(scene: &Scene, config: &SolverConfig) -> Result<SolveReport> {
    config.validate()?;
    let body = build_body(&scene.anchors(), config.mass)?;
    let params = config.params();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut state = BodyState::rest(body.x_bar);
    let mut trials = 0usize;
    let mut recorded: Vec<(BodyState, f64)> = Vec::new();
    let mut energies = Vec::new();
    let mut trace = config.record_trace.then(Vec::new);
    let mut settled = false;
    let mut iterations = 0;

    for step in 1..=config.k_max {
        iterations = step;
        let ev = evaluate(&state, scene, &body, &params)?;
        let norm = ev.sdot.norm();
        if let Some(tr) = trace.as_mut() {
            tr.push(TraceStep {
                step,
                sdot_norm: norm,
                potential: ev.potential,
            });
        }
        let mut sdot = ev.sdot;
        if norm < config.eps {
            if config.escape_minimum && trials <= config.t_max {
                recorded.push((state, ev.potential));
                energies.push((trials, ev.potential));
                sdot = perturb_derivative(&mut rng);
                trials += 1;
            } else {
                settled = true;
                break;
            }
        }
        state = advance(&state, &sdot, config.dt);
    }

    let mut status = if settled {
        SolveStatus::Converged
    } else {
        SolveStatus::MaxStepsReached
    };
    if config.escape_minimum {
        let best = recorded
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
            .map(|(i, _)| i);
        if let Some(i) = best {
            state = recorded[i].0;
            status = SolveStatus::Converged;
        }
    }

    let transform = state_transform(&state, &body);
    let final_cost = scene.cost(&transform)?;
    Ok(SolveReport {
        transform,
        status,
        iterations,
        final_cost,
        equilibrium_energies: energies,
        trace,
        state,
    })
}
