mod common;

use approx::assert_relative_eq;
use damp::dynamics::{
    angular_acceleration, build_body, state_derivative, total_force, BodyState, DynamicsParams,
    ForceSet,
};
use damp::geometry::{UnitQuat, Vec3};
use damp::harness::random_rotation;
use damp::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cloud(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec3> {
    (0..n).map(|_| common::uniform(rng, 2.0)).collect()
}

fn moving_state(rng: &mut ChaCha8Rng, x_bar: Vec3) -> BodyState {
    BodyState {
        x_c: x_bar + common::uniform(rng, 1.0),
        q: UnitQuat::from_rotmat(&random_rotation(rng)),
        v_c: common::uniform(rng, 1.0),
        omega: common::uniform(rng, 1.0),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn angular_acceleration_matches_direct_solve(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(3..20);
        let body = build_body(&cloud(&mut rng, n), rng.random_range(0.1..3.0)).unwrap();
        let omega = common::uniform(&mut rng, 2.0);
        let tau = common::uniform(&mut rng, 5.0);
        let via_factor = angular_acceleration(&body, &omega, &tau);
        let rhs = tau - omega.cross(&(body.inertia * omega));
        let direct = body.inertia.lu().solve(&rhs).unwrap();
        prop_assert!((via_factor - direct).norm() <= 1e-10 * (1.0 + direct.norm()));
    }

    #[test]
    fn quaternion_rate_is_tangent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = cloud(&mut rng, 6);
        let body = build_body(&pts, 1.0).unwrap();
        let state = moving_state(&mut rng, body.x_bar);
        let forces = ForceSet::new(pts.iter().map(|_| common::uniform(&mut rng, 1.0)).collect(), pts.clone()).unwrap();
        let s = state_derivative(&state, &forces, &body, &DynamicsParams::default());
        let q = state.to_vector();
        let tangency: f64 = (3..7).map(|i| q[i] * s[i]).sum();
        prop_assert!(tangency.abs() < 1e-12);
    }

    #[test]
    fn pure_spin_has_no_net_damping_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = cloud(&mut rng, 8);
        let body = build_body(&pts, 1.0).unwrap();
        let mut state = moving_state(&mut rng, body.x_bar);
        state.v_c = Vec3::zeros();
        let forces = ForceSet::new(vec![Vec3::zeros(); pts.len()], pts.clone()).unwrap();
        let (f, _) = total_force(&state, &forces, &body, &DynamicsParams::default());
        prop_assert!(f.norm() < 1e-12);
    }
}

#[test]
fn inertia_by_direct_summation() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pts = cloud(&mut rng, 7);
    let body = build_body(&pts, 0.5).unwrap();
    let c = pts.iter().sum::<Vec3>() / 7.0;
    for a in 0..3 {
        for b in 0..3 {
            let direct: f64 = pts
                .iter()
                .map(|p| {
                    let r = p - c;
                    0.5 * (if a == b { r.norm_squared() } else { 0.0 } - r[a] * r[b])
                })
                .sum();
            assert_relative_eq!(body.inertia[(a, b)], direct, epsilon = 1e-12);
        }
    }
    assert_relative_eq!(body.total_mass, 3.5);
}

#[test]
fn collinear_bodies_are_singular() {
    let line: Vec<Vec3> = (0..5).map(|i| Vec3::x() * i as f64).collect();
    assert!(matches!(
        build_body(&line, 1.0),
        Err(Error::SingularInertia(_))
    ));
    assert!(build_body(&line[..2], 1.0).is_err());
}

#[test]
fn translation_only_forces_give_no_rotation() {
    let pts = vec![Vec3::x(), Vec3::y(), -Vec3::x(), -Vec3::y(), Vec3::z()];
    let body = build_body(&pts, 1.0).unwrap();
    let state = BodyState::rest(body.x_bar);
    let push = Vec3::new(0.3, -0.2, 0.1);
    let forces = ForceSet::new(vec![push; 5], pts).unwrap();
    let s = state_derivative(&state, &forces, &body, &DynamicsParams::default());
    assert_relative_eq!(Vec3::new(s[7], s[8], s[9]), push, epsilon = 1e-14);
    assert!(Vec3::new(s[10], s[11], s[12]).norm() < 1e-14);
    assert_eq!(s.rows(0, 7).norm(), 0.0);
}
