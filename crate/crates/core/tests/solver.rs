mod common;

use damp::dynamics::build_body;
use damp::geometry::{Primitive, RigidTransform, Vec3};
use damp::harness::{
    gen_pcr, gen_symmetric, random_rotation, rotation_error_deg, trial_seed, SymmetricKind,
};
use damp::oracle::torque_residual;
use damp::solver::{damp_solve, evaluate, Scene, SolveStatus, SolverConfig};
use damp::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn anchors(ps: &[Primitive]) -> Vec<Vec3> {
    ps.iter().map(|p| p.anchor()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn converged_solutions_satisfy_equilibrium_conditions(seed in any::<u64>()) {
        let scene = gen_pcr(seed, 40, 0.02).unwrap();
        let config = SolverConfig::default();
        let report = damp_solve(&scene, &config).unwrap();
        prop_assert_eq!(report.status, SolveStatus::Converged);
        let body = build_body(&scene.anchors(), config.mass).unwrap();
        let ev = evaluate(&report.state, &scene, &body, &config.params()).unwrap();
        prop_assert!(ev.sdot.norm() < config.eps);

        let y = anchors(&scene.y);
        let y_bar = y.iter().sum::<Vec3>() / y.len() as f64;
        prop_assert!((report.state.x_c - y_bar).norm() < 1e-5);
        let y_ref: Vec<Vec3> = y.iter().map(|p| p - y_bar).collect();
        prop_assert!(torque_residual(&body.x_ref, &y_ref, &report.state.rotation()) < 1e-4);
    }

    #[test]
    fn rotating_the_target_rotates_the_solution(seed in any::<u64>()) {
        let scene = gen_pcr(seed, 30, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xABCD);
        let s = RigidTransform { rotation: random_rotation(&mut rng), translation: common::uniform(&mut rng, 2.0) };
        let moved = Scene::new(
            scene.x.clone(),
            scene.y.iter().map(|p| Primitive::point(s.apply(&p.anchor()))).collect(),
        )
        .unwrap();
        let config = SolverConfig::default();
        let t = damp_solve(&scene, &config).unwrap().transform;
        let st = damp_solve(&moved, &config).unwrap().transform;
        let expected = s.compose(&t);
        prop_assert!(rotation_error_deg(&st.rotation, &expected.rotation).unwrap().to_radians() < 1e-3);
        prop_assert!((st.translation - expected.translation).norm() < 1e-3);
    }
}

#[test]
fn escape_returns_lowest_recorded_equilibrium() {
    let scene = gen_symmetric(SymmetricKind::Square, 0.4).unwrap();
    let config = SolverConfig {
        escape_minimum: true,
        seed: 3,
        ..SolverConfig::default()
    };
    let report = damp_solve(&scene, &config).unwrap();
    assert!(!report.equilibrium_energies.is_empty());
    assert!(report.equilibrium_energies.len() <= config.t_max + 1);
    let best = report
        .equilibrium_energies
        .iter()
        .map(|e| e.1)
        .fold(f64::INFINITY, f64::min);
    // with k = 2 the potential equals the alignment cost
    assert!((report.final_cost - best).abs() < 1e-9);
    assert_eq!(report.status, SolveStatus::Converged);
}

#[test]
fn symmetric_start_is_stuck_without_escape() {
    let scene = gen_symmetric(SymmetricKind::Triangle, 1.1).unwrap();
    let report = damp_solve(&scene, &SolverConfig::default()).unwrap();
    assert_eq!(report.iterations, 1);
    assert_eq!(report.status, SolveStatus::Converged);
    let gt = scene.groundtruth.unwrap();
    assert!(
        (rotation_error_deg(&report.transform.rotation, &gt.rotation).unwrap() - 180.0).abs()
            < 1e-6
    );
}

#[test]
fn identical_inputs_give_identical_reports() {
    let scene = gen_pcr(trial_seed(2, 0), 50, 0.05).unwrap();
    let config = SolverConfig {
        escape_minimum: true,
        record_trace: true,
        seed: 9,
        ..SolverConfig::default()
    };
    assert_eq!(
        damp_solve(&scene, &config).unwrap(),
        damp_solve(&scene, &config).unwrap()
    );
}

#[test]
fn step_limit_is_reported() {
    let scene = gen_pcr(4, 30, 0.01).unwrap();
    let config = SolverConfig {
        k_max: 5,
        record_trace: true,
        ..SolverConfig::default()
    };
    let report = damp_solve(&scene, &config).unwrap();
    assert_eq!(report.status, SolveStatus::MaxStepsReached);
    assert_eq!(report.iterations, 5);
    assert_eq!(report.trace.unwrap().len(), 5);
}

#[test]
fn invalid_scenes_and_configs() {
    let p = |x: f64| Primitive::point(Vec3::new(x, 0.0, 0.0));
    let line = Primitive::line(Vec3::zeros(), Vec3::x()).unwrap();
    assert!(Scene::new(vec![p(0.0)], vec![]).is_err());
    assert!(Scene::new(vec![], vec![]).is_err());
    assert!(matches!(
        Scene::new(vec![line.clone()], vec![p(0.0)]),
        Err(Error::UnsupportedPair { .. })
    ));
    let collinear = Scene::new(vec![p(0.0), p(1.0), p(2.0)], vec![p(0.0), p(1.0), p(2.0)]).unwrap();
    assert!(matches!(
        damp_solve(&collinear, &SolverConfig::default()),
        Err(Error::SingularInertia(_))
    ));
    let scene = gen_pcr(1, 10, 0.0).unwrap();
    for bad in [
        SolverConfig {
            dt: 0.0,
            ..SolverConfig::default()
        },
        SolverConfig {
            mu: -1.0,
            ..SolverConfig::default()
        },
        SolverConfig {
            eps: f64::NAN,
            ..SolverConfig::default()
        },
        SolverConfig {
            k_max: 0,
            ..SolverConfig::default()
        },
    ] {
        assert!(damp_solve(&scene, &bad).is_err(), "{bad:?}");
    }
}
