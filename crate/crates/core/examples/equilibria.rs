//! The four equilibria of point-cloud registration: torque residuals,
//! separation from the optimum, and the energy drop certifying that the
//! three spurious ones are unstable.

use damp::harness::{gen_pcr, rotation_error_deg};
use damp::oracle::{equilibrium_set, instability_certificate, torque_residual, EquilibriumSet};

fn main() -> damp::Result<()> {
    let scene = gen_pcr(2, 30, 0.05)?;
    let x: Vec<_> = scene.x.iter().map(|p| p.anchor()).collect();
    let y: Vec<_> = scene.y.iter().map(|p| p.anchor()).collect();
    let eq = equilibrium_set(&x, &y)?;
    let best = eq.rotations[EquilibriumSet::OPTIMAL_INDEX];
    println!("singular values {:.4?}", eq.decomposition.s.as_slice());

    for (j, r) in eq.rotations.iter().enumerate() {
        let cost = scene.cost(&eq.transform(j))?;
        println!(
            "equilibrium {}: torque {:.2e}, {:6.2} deg from optimum, cost {:.4}",
            j + 1,
            torque_residual(&eq.x_ref, &eq.y_ref, r),
            rotation_error_deg(r, &best)?,
            cost
        );
    }
    for j in 2..=4 {
        let (axis, drop) = instability_certificate(&eq, j, 0.1, 2.0)?;
        println!(
            "rotating equilibrium {j} by 0.1 rad about {:.3?} lowers the energy by {drop:.5}",
            axis.as_slice()
        );
    }
    Ok(())
}
