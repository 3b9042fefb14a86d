//! Category-level absolute pose: uncertainty ellipsoids aligned to the
//! bearing vectors of an unseen instance.

use damp::cli::CATEGORY_APE_KMAX;
use damp::harness::{
    gen_category_ape, rotation_error_deg, synthetic_library, translation_error, RotationSampling,
};
use damp::solver::{damp_solve, SolverConfig};
use damp::sue::build_sues;

fn main() -> damp::Result<()> {
    let lib = synthetic_library(5, 3, 12, 0.1)?;
    let model = build_sues(&lib, 0.5, None)?;
    let config = SolverConfig {
        k_max: CATEGORY_APE_KMAX,
        ..SolverConfig::default()
    };
    for seed in 0..5 {
        let scene = gen_category_ape(seed, &lib, &model, 0.01, RotationSampling::default())?;
        let report = damp_solve(&scene, &config)?;
        let gt = scene.groundtruth.unwrap();
        println!(
            "seed {seed}: {} after {} steps, {:.3} deg, {:.4}",
            report.status.as_str(),
            report.iterations,
            rotation_error_deg(&report.transform.rotation, &gt.rotation)?,
            translation_error(&report.transform.translation, &gt.translation)
        );
    }
    Ok(())
}
