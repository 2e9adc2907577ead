//! Optimal densities per tiling, with the cosh law at one tangency.

use horopack::coxeter::SchlafliSymbol;
use horopack::packing::{certify_optimum, SlidingPair};
use horopack::volume::bf_constant;

fn main() -> horopack::Result<()> {
    let bf = bf_constant();
    for t in SchlafliSymbol::ASYMPTOTIC {
        let cert = certify_optimum(t)?;
        let best = &cert.optima[0];
        let labels: Vec<&str> = cert.optima.iter().map(|r| r.config.label.as_str()).collect();
        let star = if (best.density - bf).abs() < 1e-6 { "*" } else { "" };
        println!("{t}  {:.6}{star}  {}", best.density, labels.join(","));
    }

    let c = &certify_optimum(SchlafliSymbol::TETRAHEDRAL)?.optima[0].config;
    let sp = SlidingPair::new(c, c.tangencies[0].pair)?;
    let x = 0.3;
    println!("V(x)/V(0) = {:.12}, cosh 2x = {:.12}", sp.value(c, x)? / sp.v0, (2.0 * x).cosh());
    Ok(())
}
