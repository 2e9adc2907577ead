//! Λ, orthoscheme volumes and the Böröczky–Florian constant.

use std::f64::consts::PI;

use horopack::coxeter::SchlafliSymbol;
use horopack::volume::{bf_series, cell_volume_of, lobachevsky, orthoscheme_volume};

fn main() -> horopack::Result<()> {
    println!("Λ(π/6) = {:.15}", lobachevsky(PI / 6.0));
    println!("Λ(π/3) = {:.15}", lobachevsky(PI / 3.0));
    for t in SchlafliSymbol::ASYMPTOTIC {
        let (o, k) = t.cell_orthoscheme()?;
        println!(
            "{t}: {k} × {:.12} = {:.12}",
            orthoscheme_volume(o)?.value,
            cell_volume_of(t)?.value
        );
    }
    let bf = bf_series(1_000_000);
    println!("bound {:.15} (tail ≤ {:.1e})", bf.value, bf.value_bound);
    Ok(())
}
