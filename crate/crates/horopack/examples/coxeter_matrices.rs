//! Coxeter matrices, orthoschemes and the four ideal cells.

use horopack::coxeter::{build_cell, build_orthoscheme, coxeter_matrix, vertex_distance, SchlafliSymbol};

fn main() -> horopack::Result<()> {
    for t in SchlafliSymbol::ASYMPTOTIC {
        let (o, k) = t.cell_orthoscheme()?;
        let m = coxeter_matrix(o);
        let ortho = build_orthoscheme(o)?;
        let cell = build_cell(t)?;
        let ideal: Vec<usize> = (0..4).filter(|&i| m.is_ideal_vertex(i)).collect();
        println!(
            "{t}: cell {} vertices {} edges {} faces; {k} × {o}, ideal orthoscheme vertices {ideal:?}",
            cell.n(),
            cell.edges.len(),
            cell.faces.len(),
        );
        println!("  d(A1,A2) = {:?}", vertex_distance(&m, 1, 2).finite());
        let gap = (ortho.facet_gram() - m.b).abs().max();
        println!("  facet Gram vs Coxeter matrix: {gap:.1e}");
    }
    Ok(())
}
