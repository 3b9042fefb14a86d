//! Shortest distance pairs for every supported pairing.

use damp::geometry::{shortest_distance_pair, Primitive};
use nalgebra::{Matrix3, Vector3};

fn main() -> damp::Result<()> {
    let p = Primitive::point(Vector3::new(2.0, 1.0, 0.5));
    let ellipsoid = Primitive::ellipsoid(
        Vector3::zeros(),
        Matrix3::from_diagonal(&Vector3::new(1.0, 0.25, 4.0)),
    )?;
    let targets = [
        Primitive::point(Vector3::new(0.0, 1.0, 0.0)),
        Primitive::line(Vector3::zeros(), Vector3::new(1.0, 1.0, 0.0))?,
        Primitive::plane(Vector3::zeros(), Vector3::z())?,
        Primitive::sphere(Vector3::zeros(), 1.0)?,
        Primitive::cylinder(Vector3::zeros(), Vector3::z(), 0.5)?,
        Primitive::cone(Vector3::zeros(), Vector3::x(), 0.3)?,
        ellipsoid.clone(),
    ];
    for y in &targets {
        let d = shortest_distance_pair(&p, y)?;
        println!(
            "point-{:<9} d = {:.6}  y* = {:.4?}{}",
            y.kind().name(),
            d.distance,
            d.y_point.as_slice(),
            if d.degenerate { "  (degenerate)" } else { "" }
        );
    }

    // an ellipsoid against a line that misses it, and one that passes through
    for point in [Vector3::new(0.0, 3.0, 0.0), Vector3::zeros()] {
        let line = Primitive::line(point, Vector3::new(1.0, 0.2, 0.1))?;
        let d = shortest_distance_pair(&ellipsoid, &line)?;
        println!(
            "ellipsoid-line d = {:.6} degenerate = {}",
            d.distance, d.degenerate
        );
    }
    Ok(())
}
