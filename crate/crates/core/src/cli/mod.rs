//! The `damp` command line: `solve`, `bench`, `distance` and `sue`.
//!
//! Exit codes: 0 on success (or a converged solve), 1 on any input or
//! usage error, 2 when a solve stops at the step limit.

pub mod files;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{shortest_distance_pair, DistancePair, Vec3};
use crate::harness::{
    rotation_error_deg, run_monte_carlo, synthetic_library, translation_error, write_csv, Family,
    PrimitiveMix, RotationSampling, SymmetricKind, Thresholds,
};
use crate::solver::{damp_solve, SolveStatus, SolverConfig};
use crate::sue::{build_sues, CategoryLibrary, SueModel};

use files::{parse_category, parse_sue, PrimitiveJson, SueFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MAX_STEPS: i32 = 2;

/// Default step limit for category absolute pose scenes, which converge slowly.
pub const CATEGORY_APE_KMAX: usize = 5000;

/// Synthetic library used by the category benches when no file is given.
const SYNTH_SHAPES: usize = 3;
const SYNTH_DEFORM: f64 = 0.1;

#[derive(Debug, Parser)]
#[command(
    name = "damp",
    version,
    about = "Pose estimation by damped rigid-body dynamics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the alignment problem in a scene file.
    Solve(SolveArgs),
    /// Run a seeded Monte Carlo benchmark and write per-trial CSV.
    Bench(BenchArgs),
    /// Shortest distance pair of `{"x": primitive, "y": primitive}` read from stdin.
    Distance(DistanceArgs),
    /// Build semantic uncertainty ellipsoids from a category file.
    Sue(SueArgs),
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Perturb at equilibria and keep the lowest-energy one.
    #[arg(long)]
    pub escape: bool,
    #[arg(long, default_value_t = 5)]
    pub tmax: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.3)]
    pub dt: f64,
    /// Step limit; category-ape benches default to 5000.
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 2.0)]
    pub spring: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SolverArgs {
    fn config(&self, default_kmax: usize) -> SolverConfig {
        SolverConfig {
            mu: self.mu,
            mass: self.mass,
            spring: self.spring,
            escape_minimum: self.escape,
            t_max: self.tmax,
            eps: self.eps,
            dt: self.dt,
            k_max: self.kmax.unwrap_or(default_kmax),
            seed: self.seed,
            record_trace: false,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub scene: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Write `step,sdot_norm,potential` per step to this CSV file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchFamily {
    Pcr,
    Primitive,
    Category,
    Ape,
    CategoryApe,
    Symmetric,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub family: BenchFamily,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Noise level: 3D σ for pcr/primitive, 2D σ for ape/category-ape.
    #[arg(long)]
    pub noise: Option<f64>,
    /// Points (pcr, ape), primitives per type (primitive) or keypoints of the
    /// synthetic library (category, category-ape).
    #[arg(long)]
    pub n: Option<usize>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record per-trial wall time in the `time_s` column.
    #[arg(long)]
    pub timing: bool,
    /// Category library file for category/category-ape.
    #[arg(long)]
    pub category: Option<PathBuf>,
    /// SUE model file to use instead of building one from the library.
    #[arg(long)]
    pub sue: Option<PathBuf>,
    /// Draw the world rotation of pose scenes uniformly over SO(3).
    #[arg(long)]
    pub uniform_rotation: bool,
    /// Symmetric corner shape.
    #[arg(long, value_enum, default_value_t = ShapeArg::Triangle)]
    pub shape: ShapeArg,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Triangle,
    Square,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    /// Print JSON with full precision instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SueArgs {
    pub category: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    /// Covariance regularization; defaults to 1e-6 times the mean squared
    /// spread of the mean shape.
    #[arg(long)]
    pub reg: Option<f64>,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(&a, stdout),
        Command::Bench(a) => cmd_bench(&a, stdout, stderr),
        Command::Distance(a) => cmd_distance(&a, stdin, stdout),
        Command::Sue(a) => cmd_sue(&a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn fmt3(v: &Vec3) -> String {
    format!("{} {} {}", v.x, v.y, v.z)
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let scene = files::parse_scene(&read_file(&args.scene)?)?;
    let mut config = args.solver.config(SolverConfig::default().k_max);
    config.record_trace = args.trace.is_some();
    let report = damp_solve(&scene, &config)?;

    let [qx, qy, qz, qw] = report.transform.quaternion().to_xyzw();
    writeln!(out, "status: {}", report.status.as_str())?;
    writeln!(out, "iterations: {}", report.iterations)?;
    writeln!(out, "final_cost: {}", report.final_cost)?;
    writeln!(out, "quaternion_xyzw: {qx} {qy} {qz} {qw}")?;
    writeln!(out, "translation: {}", fmt3(&report.transform.translation))?;
    if let Some(gt) = scene.groundtruth {
        let rot = rotation_error_deg(&report.transform.rotation, &gt.rotation)?;
        let trans = translation_error(&report.transform.translation, &gt.translation);
        writeln!(out, "rotation_error_deg: {rot}")?;
        writeln!(out, "translation_error: {trans}")?;
    }
    if let (Some(path), Some(trace)) = (&args.trace, &report.trace) {
        let mut csv = String::from("step,sdot_norm,potential\n");
        for s in trace {
            csv.push_str(&format!("{},{},{}\n", s.step, s.sdot_norm, s.potential));
        }
        fs::write(path, csv)?;
    }
    Ok(match report.status {
        SolveStatus::Converged => EXIT_OK,
        SolveStatus::MaxStepsReached => EXIT_MAX_STEPS,
    })
}

fn category_inputs(args: &BenchArgs, n: usize) -> Result<(CategoryLibrary, SueModel)> {
    let lib = match &args.category {
        Some(path) => parse_category(&read_file(path)?)?,
        None => synthetic_library(args.solver.seed, SYNTH_SHAPES, n, SYNTH_DEFORM)?,
    };
    let model = match &args.sue {
        Some(path) => parse_sue(&read_file(path)?)?,
        None => build_sues(&lib, 0.5, None)?,
    };
    if model.means.len() != lib.num_keypoints() {
        return Err(Error::InvalidInput(format!(
            "SUE model has {} keypoints, library has {}",
            model.means.len(),
            lib.num_keypoints()
        )));
    }
    Ok((lib, model))
}

fn bench_family(args: &BenchArgs) -> Result<Family> {
    let reject = |flag: &str, given: bool| {
        if given {
            Err(Error::InvalidInput(format!(
                "{flag} does not apply to this family"
            )))
        } else {
            Ok(())
        }
    };
    let category_family = matches!(
        args.family,
        BenchFamily::Category | BenchFamily::CategoryApe
    );
    reject("--category", args.category.is_some() && !category_family)?;
    reject("--sue", args.sue.is_some() && !category_family)?;
    reject(
        "--uniform-rotation",
        args.uniform_rotation
            && !matches!(args.family, BenchFamily::Ape | BenchFamily::CategoryApe),
    )?;
    if let Some(s) = args.noise {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "--noise must be nonnegative, got {s}"
            )));
        }
    }
    let rotation = if args.uniform_rotation {
        RotationSampling::Uniform
    } else {
        RotationSampling::default()
    };
    Ok(match args.family {
        BenchFamily::Pcr => Family::Pcr {
            n: args.n.unwrap_or(100),
            sigma: args.noise.unwrap_or(0.01),
        },
        BenchFamily::Primitive => {
            let per = args.n.unwrap_or(50);
            Family::Primitive {
                mix: PrimitiveMix {
                    points: per,
                    lines: per,
                    planes: per,
                    ..PrimitiveMix::default()
                },
                sigma: args.noise.unwrap_or(0.01),
            }
        }
        BenchFamily::Category => {
            reject("--noise", args.noise.is_some())?;
            reject("--n", args.n.is_some() && args.category.is_some())?;
            let (lib, model) = category_inputs(args, args.n.unwrap_or(12))?;
            Family::Category { lib, model }
        }
        BenchFamily::Ape => Family::Ape {
            n: args.n.unwrap_or(100),
            sigma_2d: args.noise.unwrap_or(0.01),
            rotation,
        },
        BenchFamily::CategoryApe => {
            reject("--n", args.n.is_some() && args.category.is_some())?;
            let (lib, model) = category_inputs(args, args.n.unwrap_or(12))?;
            Family::CategoryApe {
                lib,
                model,
                sigma_2d: args.noise.unwrap_or(0.01),
                rotation,
            }
        }
        BenchFamily::Symmetric => {
            reject("--noise", args.noise.is_some())?;
            reject("--n", args.n.is_some())?;
            Family::Symmetric {
                kind: match args.shape {
                    ShapeArg::Triangle => SymmetricKind::Triangle,
                    ShapeArg::Square => SymmetricKind::Square,
                },
            }
        }
    })
}

/// Runs the benchmark. The CSV goes to `--out` (summary on stdout) or to
/// stdout (summary on stderr).
pub fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let family = bench_family(args)?;
    let default_kmax = match args.family {
        BenchFamily::CategoryApe => CATEGORY_APE_KMAX,
        _ => SolverConfig::default().k_max,
    };
    let config = args.solver.config(default_kmax);
    config.validate()?;
    let (trials, summary) = run_monte_carlo(
        &family,
        &config,
        args.trials,
        args.solver.seed,
        &Thresholds::default(),
        args.timing,
    )?;
    let mut csv = Vec::new();
    write_csv(&mut csv, &trials)?;
    match &args.out {
        Some(path) => {
            fs::write(path, csv)?;
            writeln!(stdout, "{summary}")?;
        }
        None => {
            stdout.write_all(&csv)?;
            writeln!(stderr, "{summary}")?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct DistanceQuery {
    x: PrimitiveJson,
    y: PrimitiveJson,
}

#[derive(Serialize)]
struct DistanceJson {
    x_point: [f64; 3],
    y_point: [f64; 3],
    distance: f64,
    degenerate: bool,
}

fn fixed3(v: &Vec3) -> String {
    format!("{:.12} {:.12} {:.12}", v.x, v.y, v.z)
}

pub fn cmd_distance(args: &DistanceArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let mut text = String::new();
    stdin.read_to_string(&mut text)?;
    let q: DistanceQuery =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("distance query: {e}")))?;
    let x =
        q.x.to_primitive()
            .map_err(|e| Error::Parse(format!("x: {e}")))?;
    let y =
        q.y.to_primitive()
            .map_err(|e| Error::Parse(format!("y: {e}")))?;
    let DistancePair {
        x_point,
        y_point,
        distance,
        degenerate,
    } = shortest_distance_pair(&x, &y)?;
    if args.json {
        let doc = DistanceJson {
            x_point: x_point.into(),
            y_point: y_point.into(),
            distance,
            degenerate,
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string(&doc).expect("distance serializes")
        )?;
    } else {
        writeln!(out, "x_point: {}", fixed3(&x_point))?;
        writeln!(out, "y_point: {}", fixed3(&y_point))?;
        writeln!(out, "distance: {distance:.12}")?;
        writeln!(out, "degenerate: {degenerate}")?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_sue(args: &SueArgs, out: &mut dyn Write) -> Result<i32> {
    let lib = parse_category(&read_file(&args.category)?)?;
    let model = build_sues(&lib, args.eta, args.reg)?;
    let doc = SueFile::from_model(&model, lib.names.as_deref());
    let text = serde_json::to_string_pretty(&doc).expect("SUE model serializes");
    match &args.out {
        Some(path) => fs::write(path, text + "\n")?,
        None => writeln!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}
