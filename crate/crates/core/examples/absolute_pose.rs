//! Camera pose from bearing vectors, with and without random kicks at
//! equilibria. Passing `uniform` draws world rotations over all of SO(3),
//! where the body often starts behind the camera and settles on the mirrored
//! branch of the bearing lines.

use damp::harness::{run_monte_carlo, Family, RotationSampling, Thresholds};
use damp::solver::SolverConfig;

fn main() -> damp::Result<()> {
    let rotation = match std::env::args().nth(1).as_deref() {
        Some("uniform") => RotationSampling::Uniform,
        _ => RotationSampling::default(),
    };
    for n in [50, 100, 200] {
        let family = Family::Ape {
            n,
            sigma_2d: 0.01,
            rotation,
        };
        for escape in [false, true] {
            let config = SolverConfig {
                escape_minimum: escape,
                ..SolverConfig::default()
            };
            let (_, summary) =
                run_monte_carlo(&family, &config, 50, 1, &Thresholds::default(), false)?;
            println!("N={n:3} escape={escape:5}  {summary}");
        }
    }
    Ok(())
}
