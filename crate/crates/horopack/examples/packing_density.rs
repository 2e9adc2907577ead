//! Densities of every cataloged arrangement.

use horopack::coxeter::SchlafliSymbol;
use horopack::packing::{catalog, density};

fn main() -> horopack::Result<()> {
    for t in SchlafliSymbol::ASYMPTOTIC {
        for c in catalog(t)? {
            let r = density(&c)?;
            let scales: Vec<String> = c.scales().iter().map(|x| format!("{x:.4}")).collect();
            println!(
                "{t} {}: {:.10}  types {}  overlaps off edges {}  scales [{}]",
                c.label,
                r.density,
                c.type_count(),
                r.non_edge_overlaps.len(),
                scales.join(" ")
            );
        }
    }
    Ok(())
}
