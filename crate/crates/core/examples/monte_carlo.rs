//! Seeded Monte Carlo runs written as CSV; the same master seed always gives
//! the same file.

use damp::harness::{run_monte_carlo, write_csv, Family, PrimitiveMix, Thresholds};
use damp::solver::SolverConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SolverConfig::default();
    let families = [
        (
            "pcr",
            Family::Pcr {
                n: 100,
                sigma: 0.01,
            },
        ),
        (
            "primitive",
            Family::Primitive {
                mix: PrimitiveMix::default(),
                sigma: 0.01,
            },
        ),
    ];
    for (name, family) in &families {
        let (trials, summary) =
            run_monte_carlo(family, &config, 20, 42, &Thresholds::default(), false)?;
        println!("{name}: {summary}");
        let path = std::env::temp_dir().join(format!("damp_{name}.csv"));
        write_csv(&mut std::fs::File::create(&path)?, &trials)?;
        println!("  wrote {}", path.display());
    }
    Ok(())
}
