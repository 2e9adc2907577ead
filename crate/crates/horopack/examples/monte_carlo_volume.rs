//! Importance-sampled Monte Carlo volume of an ideal cell.

use horopack::coxeter::{build_cell, SchlafliSymbol};
use horopack::volume::{monte_carlo_volume_with, MonteCarloConfig};

fn main() -> horopack::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(400_000);
    for t in [SchlafliSymbol::TETRAHEDRAL, SchlafliSymbol::OCTAHEDRAL] {
        let cell = build_cell(t)?;
        let mc = monte_carlo_volume_with(cell.polytope(), &MonteCarloConfig::new(samples, 7))?;
        let z = (mc.value - cell.volume) / mc.stderr;
        println!("{t}: closed {:.9}  mc {:.6} ± {:.1e}  ({z:+.2}σ)", cell.volume, mc.value, mc.stderr);
    }
    Ok(())
}
