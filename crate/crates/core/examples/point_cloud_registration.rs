//! Register two noisy point clouds with the damped dynamics and compare the
//! result with the closed-form SVD solution.

use damp::harness::{gen_pcr, rotation_error_deg, translation_error};
use damp::oracle::horn_svd;
use damp::solver::{damp_solve, SolverConfig};

fn main() -> damp::Result<()> {
    let scene = gen_pcr(7, 100, 0.01)?;
    let report = damp_solve(&scene, &SolverConfig::default())?;

    let x: Vec<_> = scene.x.iter().map(|p| p.anchor()).collect();
    let y: Vec<_> = scene.y.iter().map(|p| p.anchor()).collect();
    let svd = horn_svd(&x, &y)?;
    let gt = scene
        .groundtruth
        .expect("generated scenes carry groundtruth");

    println!(
        "status {} after {} steps",
        report.status.as_str(),
        report.iterations
    );
    println!(
        "DAMP vs SVD: {:.3e} deg, {:.3e}",
        rotation_error_deg(&report.transform.rotation, &svd.transform.rotation)?,
        translation_error(&report.transform.translation, &svd.transform.translation)
    );
    println!(
        "DAMP vs groundtruth: {:.3} deg, {:.4}",
        rotation_error_deg(&report.transform.rotation, &gt.rotation)?,
        translation_error(&report.transform.translation, &gt.translation)
    );
    Ok(())
}
