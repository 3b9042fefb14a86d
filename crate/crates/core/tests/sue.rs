use approx::assert_relative_eq;
use damp::geometry::{Mat3, Vec3};
use damp::harness::synthetic_library;
use damp::sue::{
    build_sues, chi2_cdf_3dof, chi2_quantile_3dof, synthesize_instance, CategoryLibrary,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ellipsoids_are_symmetric_positive_definite(
        seed in any::<u64>(), k in 2usize..8, n in 1usize..10, reg in 1e-8f64..1e-2, eta in 0.05f64..0.99,
    ) {
        let lib = synthetic_library(seed, k, n, 0.3).unwrap();
        let m = build_sues(&lib, eta, Some(reg)).unwrap();
        for a in &m.shapes {
            prop_assert!((a - a.transpose()).abs().max() <= 1e-12 * a.abs().max());
            prop_assert!(a.cholesky().is_some());
        }
    }

    #[test]
    fn scaling_the_library(seed in any::<u64>(), s in 0.1f64..10.0) {
        let lib = synthetic_library(seed, 4, 5, 0.2).unwrap();
        let scaled = CategoryLibrary::new(
            lib.shapes.iter().map(|sh| sh.iter().map(|p| p * s).collect()).collect(),
        ).unwrap();
        let m = build_sues(&lib, 0.5, None).unwrap();
        let ms = build_sues(&scaled, 0.5, None).unwrap();
        for i in 0..5 {
            prop_assert!((ms.means[i] - m.means[i] * s).norm() <= 1e-12 * s * (1.0 + m.means[i].norm()));
            let expect = m.shapes[i] / (s * s);
            prop_assert!((ms.shapes[i] - expect).abs().max() <= 1e-9 * expect.abs().max());
        }
    }

    #[test]
    fn quantile_inverts_cdf(eta in 0.001f64..0.999) {
        let q = chi2_quantile_3dof(eta).unwrap();
        prop_assert!((chi2_cdf_3dof(q) - eta).abs() < 1e-12);
    }
}

#[test]
fn average_mahalanobis_of_the_library_is_the_trace() {
    for (k, seed) in [(2, 1), (3, 2), (5, 3), (12, 4)] {
        let lib = synthetic_library(seed, k, 6, 0.4).unwrap();
        let m = build_sues(&lib, 0.5, None).unwrap();
        for i in 0..6 {
            let c_tilde = m.covariances[i] + Mat3::identity() * m.reg;
            let inv = c_tilde.try_inverse().unwrap();
            let avg = lib
                .shapes
                .iter()
                .map(|s| {
                    let d = s[i] - m.means[i];
                    d.dot(&(inv * d))
                })
                .sum::<f64>()
                / k as f64;
            assert_relative_eq!(avg, (inv * m.covariances[i]).trace(), max_relative = 1e-6);
            // the trace is the rank of C when reg is small
            assert!((avg - (k - 1).min(3) as f64).abs() < 1e-3, "K = {k}: {avg}");
        }
    }
}

#[test]
fn gaussian_instances_fall_inside_at_rate_eta() {
    let lib = synthetic_library(7, 30, 4, 0.5).unwrap();
    let eta = 0.7;
    let m = build_sues(&lib, eta, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut inside = 0usize;
    let draws = 10_000;
    for _ in 0..draws / 4 {
        for i in 0..4 {
            let l = (m.covariances[i] + Mat3::identity() * m.reg)
                .cholesky()
                .unwrap()
                .l();
            let z = Vec3::from_fn(|_, _| StandardNormal.sample(&mut rng));
            let d = l * z;
            if d.dot(&(m.shapes[i] * d)) <= 1.0 {
                inside += 1;
            }
        }
    }
    let rate = inside as f64 / draws as f64;
    assert!((rate - eta).abs() < 0.1, "{rate}");
}

#[test]
fn identical_shapes_give_point_like_ellipsoids() {
    let base = vec![
        Vec3::new(1.0, 2.0, 3.0),
        Vec3::new(-1.0, 0.0, 2.0),
        Vec3::zeros(),
    ];
    let lib = CategoryLibrary::new(vec![base.clone(); 4]).unwrap();
    let m = build_sues(&lib, 0.5, Some(1e-6)).unwrap();
    for (b, a) in m.means.iter().zip(&m.shapes) {
        assert!(base.contains(b));
        assert_relative_eq!(*a, Mat3::identity() / (m.chi2 * 1e-6), max_relative = 1e-12);
    }
    assert_eq!(synthesize_instance(&lib, &[0.25; 4]).unwrap(), base);
}

#[test]
fn invalid_libraries() {
    assert!(CategoryLibrary::new(vec![vec![Vec3::zeros()]]).is_err());
    assert!(CategoryLibrary::new(vec![vec![Vec3::zeros()], vec![]]).is_err());
    let lib = synthetic_library(0, 3, 2, 0.1).unwrap();
    assert!(build_sues(&lib, 1.0, None).is_err());
    assert!(build_sues(&lib, 0.5, Some(0.0)).is_err());
    assert!(lib.with_names(vec!["a".into()]).is_err());
}
