//! A horoball at an ideal vertex: surface points, edge hits and its sector.

use horopack::coxeter::{build_cell, SchlafliSymbol};
use horopack::horoball::{edge_intersection, face_limit, polar_point, vertex_sector_volume, Horoball};

fn main() -> horopack::Result<()> {
    let cell = build_cell(SchlafliSymbol::OCTAHEDRAL)?;
    let e3 = &cell.vertices[3];
    let (cmax, face) = face_limit(&cell, 3);
    println!("largest scale at E3: {cmax:.6} (face {face})");

    for s in [1.0 / 3.0, 0.0, -1.0 / 3.0] {
        let h = Horoball::new(e3, s)?;
        let hits: Vec<_> = cell
            .neighbors(3)
            .iter()
            .map(|&w| edge_intersection(&h, e3, &cell.vertices[w]))
            .collect::<horopack::Result<_>>()?;
        println!(
            "s = {s:+.4}: sector {:.6}, first edge hit {:?}",
            vertex_sector_volume(&h, &cell, 3)?,
            hits[0].map(|p| p.chart().unwrap())
        );
    }
    let h = Horoball::new(e3, 0.0)?;
    let p = polar_point(&h, 1.0, 2.0);
    println!("surface residual at a polar point: {:.1e}", h.residual(&p));
    Ok(())
}
