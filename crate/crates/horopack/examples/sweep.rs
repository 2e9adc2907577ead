//! Density along each one-parameter family, printed as CSV.

use horopack::coxeter::SchlafliSymbol;
use horopack::packing::{families, linspace, sweep};

fn main() -> horopack::Result<()> {
    println!("tiling,family,s,x,density");
    for t in SchlafliSymbol::ASYMPTOTIC {
        for f in families(t)? {
            let (lo, hi) = f.range();
            for p in sweep(t, f.name(), &linspace(lo, hi, 11))? {
                println!("\"{t}\",{},{:.6},{:.6},{:.9}", f.name(), p.s, p.x, p.report.density);
            }
        }
    }
    Ok(())
}
