//! Align points to a mix of points, lines, planes, spheres, cylinders and
//! cones, printing the cost as the simulation settles.

use damp::harness::{gen_primitive_reg, rotation_error_deg, translation_error, PrimitiveMix};
use damp::solver::{damp_solve, SolverConfig};

fn main() -> damp::Result<()> {
    let mix = PrimitiveMix {
        points: 20,
        lines: 20,
        planes: 20,
        spheres: 10,
        cylinders: 10,
        cones: 10,
        radius: 10.0,
    };
    let scene = gen_primitive_reg(3, &mix, 0.01)?;
    let config = SolverConfig {
        record_trace: true,
        ..SolverConfig::default()
    };
    let report = damp_solve(&scene, &config)?;

    for step in report.trace.iter().flatten().step_by(10) {
        println!(
            "step {:4}  |sdot| {:.3e}  potential {:.6e}",
            step.step, step.sdot_norm, step.potential
        );
    }
    let gt = scene.groundtruth.unwrap();
    println!(
        "{} in {} steps, cost {:.4e} (groundtruth cost {:.4e})",
        report.status.as_str(),
        report.iterations,
        report.final_cost,
        scene.cost(&gt)?
    );
    println!(
        "rotation error {:.4} deg, translation error {:.4}",
        rotation_error_deg(&report.transform.rotation, &gt.rotation)?,
        translation_error(&report.transform.translation, &gt.translation)
    );
    Ok(())
}
