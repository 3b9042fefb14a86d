//! Build uncertainty ellipsoids from a small shape library and register an
//! unseen instance of the category to them.

use damp::harness::{
    gen_category_reg_with_model, rotation_error_deg, synthetic_library, translation_error,
};
use damp::solver::{damp_solve, SolverConfig};
use damp::sue::build_sues;

fn main() -> damp::Result<()> {
    let lib = synthetic_library(11, 3, 12, 0.1)?;
    let model = build_sues(&lib, 0.5, None)?;
    println!("chi2_3(0.5) = {:.6}, reg = {:.3e}", model.chi2, model.reg);

    for seed in 0..5 {
        let scene = gen_category_reg_with_model(seed, &lib, &model)?;
        let report = damp_solve(&scene, &SolverConfig::default())?;
        let gt = scene.groundtruth.unwrap();
        println!(
            "seed {seed}: {:.3} deg, {:.4}, {} steps",
            rotation_error_deg(&report.transform.rotation, &gt.rotation)?,
            translation_error(&report.transform.translation, &gt.translation),
            report.iterations
        );
    }
    Ok(())
}
