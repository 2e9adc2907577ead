//! Points, distances and reflections in the projective model.

use horopack::lorentz::{distance, foot_on_line, reflect, Hyperplane, PointClass, ProjectivePoint, ABSOLUTE_TOL};
use nalgebra::Vector3;

fn main() -> horopack::Result<()> {
    let o = ProjectivePoint::from_chart(&Vector3::zeros());
    let p = ProjectivePoint::from_chart(&Vector3::new(0.5, 0.0, 0.0));
    let ideal = ProjectivePoint::from_array([1.0, 0.0, 0.0, 1.0])?;

    println!("d(o, p)        = {:.12}", distance(&o, &p)?);
    println!("artanh(1/2)    = {:.12}", 0.5f64.atanh());
    assert_eq!(ideal.classify(ABSOLUTE_TOL), PointClass::Absolute);

    // mirror x = 0 swaps p with its opposite
    let mirror = Hyperplane::from_chart_plane(&Vector3::x(), 0.0)?;
    let q = reflect(&mirror, &p)?;
    println!("reflected p    = {:?}", q.chart().unwrap());

    let a = ProjectivePoint::from_array([1.0, 1.0, 0.0, 0.0])?;
    let foot = foot_on_line(&o, &a, &ideal)?;
    println!("foot on E0E3   = {:?}", foot.chart().unwrap());
    Ok(())
}
