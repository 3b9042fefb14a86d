//! Symmetric configurations where the spring forces and torques cancel on a
//! flipped pose, so the body never moves without a kick.

use damp::harness::{gen_symmetric, rotation_error_deg, SymmetricKind};
use damp::solver::{damp_solve, SolverConfig};

fn main() -> damp::Result<()> {
    for kind in [SymmetricKind::Triangle, SymmetricKind::Square] {
        let scene = gen_symmetric(kind, 0.7)?;
        let gt = scene.groundtruth.unwrap();
        for escape in [false, true] {
            let config = SolverConfig {
                escape_minimum: escape,
                ..SolverConfig::default()
            };
            let r = damp_solve(&scene, &config)?;
            println!(
                "{kind:?} escape={escape:5}: {} steps, cost {:.4}, {:.2} deg from groundtruth",
                r.iterations,
                r.final_cost,
                rotation_error_deg(&r.transform.rotation, &gt.rotation)?
            );
        }
    }
    Ok(())
}
