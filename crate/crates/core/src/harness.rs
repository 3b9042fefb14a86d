//! Seeded scenario generators, pose error metrics and a Monte Carlo runner.
//!
//! Every generator is a pure function of its seed and parameters. Random
//! rotations are uniform on SO(3) (normalized Gaussian quaternions).

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::geometry::{
    is_rotation, orthogonal_unit, rodrigues, transform_primitive, Mat3, Primitive, RigidTransform,
    UnitQuat, Vec3,
};
use crate::solver::{damp_solve, Scene, SolveStatus, SolverConfig};
use crate::sue::{build_sues, synthesize_instance, CategoryLibrary, SueModel};

/// Outcome of one Monte Carlo trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub seed: u64,
    pub rotation_error_deg: f64,
    pub translation_error: f64,
    pub iterations: usize,
    pub final_cost: f64,
    pub status: SolveStatus,
    pub success: bool,
    /// Only measured when timing is requested, so that output stays
    /// reproducible by default.
    pub wall_time_s: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    /// Standard deviation of 3D Gaussian noise.
    pub sigma_3d: f64,
    /// Standard deviation of noise on normalized image coordinates.
    pub sigma_2d: f64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        NoiseSpec {
            sigma_3d: 0.01,
            sigma_2d: 0.01,
        }
    }
}

/// Geodesic distance between two rotations, in degrees.
pub fn rotation_error_deg(r1: &Mat3, r2: &Mat3) -> Result<f64> {
    if !is_rotation(r1) || !is_rotation(r2) {
        return Err(invalid("rotation error needs proper rotation matrices"));
    }
    let d = r1.transpose() * r2;
    let skew = Vec3::new(
        d[(2, 1)] - d[(1, 2)],
        d[(0, 2)] - d[(2, 0)],
        d[(1, 0)] - d[(0, 1)],
    );
    // atan2 keeps full precision near 0 and near π, unlike arccos
    Ok((0.5 * skew.norm())
        .atan2(0.5 * (d.trace() - 1.0))
        .to_degrees())
}

pub fn translation_error(t1: &Vec3, t2: &Vec3) -> f64 {
    (t1 - t2).norm()
}

/// Uniform random rotation.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    loop {
        let q = UnitQuat::from_xyzw(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if q.norm() > 1e-6 {
            return q.normalized().to_rotmat();
        }
    }
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    loop {
        let v = gaussian3(rng, 1.0);
        let n = v.norm();
        if n > 1e-6 {
            return v / n;
        }
    }
}

fn gaussian3<R: Rng + ?Sized>(rng: &mut R, sigma: f64) -> Vec3 {
    Vec3::new(
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
    ) * sigma
}

fn uniform3<R: Rng + ?Sized>(rng: &mut R, half_width: f64) -> Vec3 {
    Vec3::new(
        rng.random_range(-half_width..=half_width),
        rng.random_range(-half_width..=half_width),
        rng.random_range(-half_width..=half_width),
    )
}

/// Uniform point in the ball of the given radius centered at the origin.
fn uniform_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Vec3 {
    random_unit_vector(rng) * radius * rng.random::<f64>().cbrt()
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn points(v: &[Vec3]) -> Vec<Primitive> {
    v.iter().map(|p| Primitive::point(*p)).collect()
}

/// Point cloud registration: `N` points from `N(0, I)`, moved by a random
/// `(R, t)` with `t ∈ [−1, 1]³`, plus `N(0, σ²I)` noise on the targets.
pub fn gen_pcr(seed: u64, n: usize, sigma: f64) -> Result<Scene> {
    if n < 3 {
        return Err(invalid("point cloud registration needs at least 3 points"));
    }
    let mut rng = rng_for(seed);
    let x: Vec<Vec3> = (0..n).map(|_| gaussian3(&mut rng, 1.0)).collect();
    let r = random_rotation(&mut rng);
    let t = uniform3(&mut rng, 1.0);
    let y: Vec<Vec3> = x
        .iter()
        .map(|p| r * p + t + gaussian3(&mut rng, sigma))
        .collect();
    Ok(
        Scene::new(points(&x), points(&y))?.with_groundtruth(RigidTransform {
            rotation: r,
            translation: t,
        }),
    )
}

/// Target primitive counts for [`gen_primitive_reg`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimitiveMix {
    pub points: usize,
    pub lines: usize,
    pub planes: usize,
    pub spheres: usize,
    pub cylinders: usize,
    pub cones: usize,
    /// Scene radius.
    pub radius: f64,
}

impl Default for PrimitiveMix {
    fn default() -> Self {
        PrimitiveMix {
            points: 50,
            lines: 50,
            planes: 50,
            spheres: 0,
            cylinders: 0,
            cones: 0,
            radius: 10.0,
        }
    }
}

impl PrimitiveMix {
    pub fn total(&self) -> usize {
        self.points + self.lines + self.planes + self.spheres + self.cylinders + self.cones
    }
}

/// Unit vector orthogonal to `v` at azimuth `phi`.
fn around<R: Rng + ?Sized>(rng: &mut R, v: &Vec3) -> Vec3 {
    let u = orthogonal_unit(v);
    let w = v.cross(&u);
    let phi = rng.random_range(0.0..2.0 * PI);
    u * phi.cos() + w * phi.sin()
}

/// Primitive registration: target primitives anchored uniformly in a ball,
/// one point sampled on each, the points moved by a random transform and
/// perturbed by `N(0, σ²I)`. The groundtruth maps the points back.
pub fn gen_primitive_reg(seed: u64, mix: &PrimitiveMix, sigma: f64) -> Result<Scene> {
    if mix.total() < 3 {
        return Err(invalid(
            "primitive registration needs at least 3 primitives",
        ));
    }
    if !(mix.radius > 0.0) {
        return Err(invalid("scene radius must be positive"));
    }
    let mut rng = rng_for(seed);
    let rad = mix.radius;
    let mut ys = Vec::with_capacity(mix.total());
    let mut on = Vec::with_capacity(mix.total());
    for _ in 0..mix.points {
        let a = uniform_ball(&mut rng, rad);
        ys.push(Primitive::point(a));
        on.push(a);
    }
    for _ in 0..mix.lines {
        let a = uniform_ball(&mut rng, rad);
        let d = random_unit_vector(&mut rng);
        ys.push(Primitive::line(a, d)?);
        on.push(a + d * rng.random_range(-rad..=rad));
    }
    for _ in 0..mix.planes {
        let a = uniform_ball(&mut rng, rad);
        let n = random_unit_vector(&mut rng);
        let u = orthogonal_unit(&n);
        let w = n.cross(&u);
        ys.push(Primitive::plane(a, n)?);
        on.push(a + u * rng.random_range(-rad..=rad) + w * rng.random_range(-rad..=rad));
    }
    for _ in 0..mix.spheres {
        let c = uniform_ball(&mut rng, rad);
        let r = rng.random_range(0.5..=2.0);
        ys.push(Primitive::sphere(c, r)?);
        on.push(c + random_unit_vector(&mut rng) * r);
    }
    for _ in 0..mix.cylinders {
        let a = uniform_ball(&mut rng, rad);
        let v = random_unit_vector(&mut rng);
        let r = rng.random_range(0.5..=2.0);
        ys.push(Primitive::cylinder(a, v, r)?);
        let s = rng.random_range(-rad..=rad);
        on.push(a + v * s + around(&mut rng, &v) * r);
    }
    for _ in 0..mix.cones {
        let a = uniform_ball(&mut rng, rad);
        let v = random_unit_vector(&mut rng);
        let theta = rng.random_range(15f64.to_radians()..=60f64.to_radians());
        ys.push(Primitive::cone(a, v, theta)?);
        let h = rng.random_range(0.0..=rad);
        on.push(a + (v * theta.cos() + around(&mut rng, &v) * theta.sin()) * h);
    }
    let motion = RigidTransform {
        rotation: random_rotation(&mut rng),
        translation: uniform3(&mut rng, rad),
    };
    let xs: Vec<Vec3> = on
        .iter()
        .map(|p| motion.apply(p) + gaussian3(&mut rng, sigma))
        .collect();
    Ok(Scene::new(points(&xs), ys)?.with_groundtruth(motion.inverse()))
}

/// Random library of `k` shapes with `n` keypoints: a base shape uniform in
/// `[−1, 1]³`, each instance displaced by `N(0, deform²I)` per keypoint.
pub fn synthetic_library(seed: u64, k: usize, n: usize, deform: f64) -> Result<CategoryLibrary> {
    let mut rng = rng_for(seed);
    let base: Vec<Vec3> = (0..n).map(|_| uniform3(&mut rng, 1.0)).collect();
    let shapes = (0..k)
        .map(|_| {
            base.iter()
                .map(|b| b + gaussian3(&mut rng, deform))
                .collect()
        })
        .collect();
    CategoryLibrary::new(shapes)
}

/// Flat Dirichlet weights, as normalized unit exponentials.
fn random_simplex<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let mut c: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = c.iter().sum();
    c.iter_mut().for_each(|w| *w /= s);
    c
}

/// Category registration against a prebuilt SUE model.
pub fn gen_category_reg_with_model(
    seed: u64,
    lib: &CategoryLibrary,
    model: &SueModel,
) -> Result<Scene> {
    let mut rng = rng_for(seed);
    let c = random_simplex(&mut rng, lib.num_shapes());
    let instance = synthesize_instance(lib, &c)?;
    let motion = RigidTransform {
        rotation: random_rotation(&mut rng),
        translation: uniform3(&mut rng, 1.0),
    };
    let xs: Vec<Vec3> = instance.iter().map(|p| motion.apply(p)).collect();
    Ok(Scene::new(points(&xs), model.to_primitives()?)?.with_groundtruth(motion.inverse()))
}

/// Category registration: an active-shape-model instance (Dirichlet
/// weights) moved by a random transform, aligned to the library's SUEs at
/// `η = 0.5`.
pub fn gen_category_reg(seed: u64, lib: &CategoryLibrary) -> Result<Scene> {
    let model = build_sues(lib, 0.5, None)?;
    gen_category_reg_with_model(seed, lib, &model)
}

/// Bearing line through the camera center for a camera-frame point.
fn bearing<R: Rng + ?Sized>(rng: &mut R, p: &Vec3, sigma_2d: f64) -> Result<Primitive> {
    let u = p.x / p.z + sigma_2d * rng.sample::<f64, _>(StandardNormal);
    let v = p.y / p.z + sigma_2d * rng.sample::<f64, _>(StandardNormal);
    Primitive::line(Vec3::zeros(), Vec3::new(u, v, 1.0))
}

/// How the world-from-camera rotation of the pose scenes is drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RotationSampling {
    /// Roll, pitch and yaw each uniform in `[−max, max]` radians.
    Bounded { max_angle: f64 },
    /// Uniform over SO(3).
    Uniform,
}

impl Default for RotationSampling {
    fn default() -> Self {
        RotationSampling::Bounded { max_angle: 0.5 }
    }
}

impl RotationSampling {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Mat3 {
        match *self {
            RotationSampling::Uniform => random_rotation(rng),
            RotationSampling::Bounded { max_angle } => {
                let mut angle = || rng.random_range(-max_angle..=max_angle);
                let (roll, pitch, yaw) = (angle(), angle(), angle());
                rodrigues(&Vec3::z(), yaw)
                    * rodrigues(&Vec3::y(), pitch)
                    * rodrigues(&Vec3::x(), roll)
            }
        }
    }
}

fn world_from_camera<R: Rng + ?Sized>(rng: &mut R, rotation: RotationSampling) -> RigidTransform {
    RigidTransform {
        rotation: rotation.sample(rng),
        translation: uniform3(rng, 2.0),
    }
}

/// Absolute pose with the default rotation sampling; see [`gen_ape_with`].
pub fn gen_ape(seed: u64, n: usize, sigma_2d: f64) -> Result<Scene> {
    gen_ape_with(seed, n, sigma_2d, RotationSampling::default())
}

/// Absolute pose: `n` camera-frame points in `[−2, 2]² × [4, 8]`, bearing
/// lines from noisy unit-focal projections, and world points obtained by a
/// random `(R, t)` with `t ∈ [−2, 2]³`. The groundtruth maps world to camera.
pub fn gen_ape_with(
    seed: u64,
    n: usize,
    sigma_2d: f64,
    rotation: RotationSampling,
) -> Result<Scene> {
    if n < 4 {
        return Err(invalid("absolute pose needs at least 4 points"));
    }
    let mut rng = rng_for(seed);
    let cam: Vec<Vec3> = (0..n)
        .map(|_| {
            Vec3::new(
                rng.random_range(-2.0..=2.0),
                rng.random_range(-2.0..=2.0),
                rng.random_range(4.0..=8.0),
            )
        })
        .collect();
    let ys = cam
        .iter()
        .map(|p| bearing(&mut rng, p, sigma_2d))
        .collect::<Result<Vec<_>>>()?;
    let to_world = world_from_camera(&mut rng, rotation);
    let xs: Vec<Vec3> = cam.iter().map(|p| to_world.apply(p)).collect();
    Ok(Scene::new(points(&xs), ys)?.with_groundtruth(to_world.inverse()))
}

/// Category absolute pose: an active-shape-model instance placed in front
/// of the camera (uniform random orientation, center in
/// `[−0.5, 0.5]² × [5, 7]`), bearing lines from its noisy projections, and
/// the SUEs moved into the world frame as the source. The groundtruth maps
/// world to camera.
pub fn gen_category_ape(
    seed: u64,
    lib: &CategoryLibrary,
    model: &SueModel,
    sigma_2d: f64,
    rotation: RotationSampling,
) -> Result<Scene> {
    let mut rng = rng_for(seed);
    let c = random_simplex(&mut rng, lib.num_shapes());
    let instance = synthesize_instance(lib, &c)?;
    let in_camera = RigidTransform {
        rotation: random_rotation(&mut rng),
        translation: Vec3::new(
            rng.random_range(-0.5..=0.5),
            rng.random_range(-0.5..=0.5),
            rng.random_range(5.0..=7.0),
        ),
    };
    let ys = instance
        .iter()
        .map(|p| bearing(&mut rng, &in_camera.apply(p), sigma_2d))
        .collect::<Result<Vec<_>>>()?;
    let to_world = world_from_camera(&mut rng, rotation);
    let place = to_world.compose(&in_camera);
    let xs = model
        .to_primitives()?
        .iter()
        .map(|e| transform_primitive(&place, e))
        .collect();
    Ok(Scene::new(xs, ys)?.with_groundtruth(to_world.inverse()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetricKind {
    Triangle,
    Square,
}

impl SymmetricKind {
    pub fn sides(self) -> usize {
        match self {
            SymmetricKind::Triangle => 3,
            SymmetricKind::Square => 4,
        }
    }
}

/// Regular polygon with unit circumradius in the `xy`-plane.
pub fn regular_polygon(kind: SymmetricKind) -> Vec<Vec3> {
    let n = kind.sides();
    (0..n)
        .map(|j| {
            let a = 2.0 * PI * j as f64 / n as f64;
            Vec3::new(a.cos(), a.sin(), 0.0)
        })
        .collect()
}

/// Symmetric corner configuration: the target is a regular polygon and the
/// source is the same polygon rotated by `θ` about its normal and then
/// flipped by a half-turn about the rotated first vertex direction. Forces
/// and torques cancel there for every `θ`, so the body starts at rest on a
/// spurious equilibrium.
pub fn gen_symmetric(kind: SymmetricKind, theta: f64) -> Result<Scene> {
    if !theta.is_finite() {
        return Err(invalid("angle must be finite"));
    }
    let y = regular_polygon(kind);
    let spin = rodrigues(&Vec3::z(), theta);
    let flip = rodrigues(&(spin * y[0]), PI);
    let construction = flip * spin;
    let x: Vec<Vec3> = y.iter().map(|p| construction * p).collect();
    Ok(
        Scene::new(points(&x), points(&y))?.with_groundtruth(RigidTransform {
            rotation: construction.transpose(),
            translation: Vec3::zeros(),
        }),
    )
}

/// Scenario family for [`run_monte_carlo`].
#[derive(Clone, Debug)]
pub enum Family {
    Pcr {
        n: usize,
        sigma: f64,
    },
    Primitive {
        mix: PrimitiveMix,
        sigma: f64,
    },
    Category {
        lib: CategoryLibrary,
        model: SueModel,
    },
    Ape {
        n: usize,
        sigma_2d: f64,
        rotation: RotationSampling,
    },
    CategoryApe {
        lib: CategoryLibrary,
        model: SueModel,
        sigma_2d: f64,
        rotation: RotationSampling,
    },
    /// Angle drawn uniformly in `(0, 2π)` per trial.
    Symmetric {
        kind: SymmetricKind,
    },
}

impl Family {
    pub fn generate(&self, seed: u64) -> Result<Scene> {
        match self {
            Family::Pcr { n, sigma } => gen_pcr(seed, *n, *sigma),
            Family::Primitive { mix, sigma } => gen_primitive_reg(seed, mix, *sigma),
            Family::Category { lib, model } => gen_category_reg_with_model(seed, lib, model),
            Family::Ape {
                n,
                sigma_2d,
                rotation,
            } => gen_ape_with(seed, *n, *sigma_2d, *rotation),
            Family::CategoryApe {
                lib,
                model,
                sigma_2d,
                rotation,
            } => gen_category_ape(seed, lib, model, *sigma_2d, *rotation),
            Family::Symmetric { kind } => {
                let theta = rng_for(seed).random_range(1e-3..2.0 * PI - 1e-3);
                gen_symmetric(*kind, theta)
            }
        }
    }
}

/// Success thresholds on rotation (degrees) and translation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    pub rotation_deg: f64,
    pub translation: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            rotation_deg: 5.0,
            translation: 0.5,
        }
    }
}

/// Per-trial seed: SplitMix64 of the master seed advanced `index + 1` times.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Solves one scene and scores it against its groundtruth.
pub fn run_trial(
    scene: &Scene,
    config: &SolverConfig,
    seed: u64,
    thresholds: &Thresholds,
    timing: bool,
) -> Result<TrialResult> {
    let gt = scene
        .groundtruth
        .ok_or_else(|| invalid("trial scene has no groundtruth"))?;
    let cfg = SolverConfig {
        seed,
        ..config.clone()
    };
    let start = timing.then(Instant::now);
    let report = damp_solve(scene, &cfg)?;
    let wall_time_s = start.map(|s| s.elapsed().as_secs_f64());
    let rot = rotation_error_deg(&report.transform.rotation, &gt.rotation)?;
    let trans = translation_error(&report.transform.translation, &gt.translation);
    Ok(TrialResult {
        seed,
        rotation_error_deg: rot,
        translation_error: trans,
        iterations: report.iterations,
        final_cost: report.final_cost,
        status: report.status,
        success: rot < thresholds.rotation_deg && trans < thresholds.translation,
        wall_time_s,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub trials: usize,
    pub success_rate: f64,
    pub rot_median_deg: f64,
    pub rot_p90_deg: f64,
    pub rot_max_deg: f64,
    pub trans_median: f64,
    pub trans_max: f64,
    pub iters_median: f64,
    pub iters_mean: f64,
    pub iters_max: usize,
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "trials={} success_rate={:.4} rot_err_deg[median={:.3e} p90={:.3e} max={:.3e}] \
             trans_err[median={:.3e} max={:.3e}] iters[median={} mean={:.1} max={}]",
            self.trials,
            self.success_rate,
            self.rot_median_deg,
            self.rot_p90_deg,
            self.rot_max_deg,
            self.trans_median,
            self.trans_max,
            self.iters_median,
            self.iters_mean,
            self.iters_max
        )
    }
}

/// Linear-interpolated quantile of an unsorted sample.
pub fn quantile(values: &[f64], p: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let pos = p.clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
}

pub fn summarize(trials: &[TrialResult]) -> Summary {
    let rot: Vec<f64> = trials.iter().map(|t| t.rotation_error_deg).collect();
    let trans: Vec<f64> = trials.iter().map(|t| t.translation_error).collect();
    let iters: Vec<f64> = trials.iter().map(|t| t.iterations as f64).collect();
    let n = trials.len().max(1) as f64;
    Summary {
        trials: trials.len(),
        success_rate: trials.iter().filter(|t| t.success).count() as f64 / n,
        rot_median_deg: quantile(&rot, 0.5),
        rot_p90_deg: quantile(&rot, 0.9),
        rot_max_deg: quantile(&rot, 1.0),
        trans_median: quantile(&trans, 0.5),
        trans_max: quantile(&trans, 1.0),
        iters_median: quantile(&iters, 0.5),
        iters_mean: iters.iter().sum::<f64>() / n,
        iters_max: trials.iter().map(|t| t.iterations).max().unwrap_or(0),
    }
}

/// Runs `n_trials` independent trials in parallel; results are in trial
/// order and depend only on the inputs (timing aside).
pub fn run_monte_carlo(
    family: &Family,
    config: &SolverConfig,
    n_trials: usize,
    master_seed: u64,
    thresholds: &Thresholds,
    timing: bool,
) -> Result<(Vec<TrialResult>, Summary)> {
    if n_trials < 1 {
        return Err(invalid("need at least one trial"));
    }
    let trials = (0..n_trials as u64)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(master_seed, i);
            let scene = family.generate(seed)?;
            run_trial(&scene, config, seed, thresholds, timing)
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&trials);
    Ok((trials, summary))
}

pub const CSV_HEADER: &str = "seed,rot_err_deg,trans_err,iters,cost,success,time_s";

/// Writes trials as CSV. `time_s` is left empty for untimed trials.
pub fn write_csv<W: Write>(out: &mut W, trials: &[TrialResult]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for t in trials {
        let time = t.wall_time_s.map(|s| format!("{s}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            t.seed,
            t.rotation_error_deg,
            t.translation_error,
            t.iterations,
            t.final_cost,
            t.success,
            time
        )?;
    }
    Ok(())
}
