//! Published values the computed quantities are checked against.

use crate::coxeter::SchlafliSymbol;

/// The congruent-ball density bound, as printed to eight digits.
pub const BF_PRINTED: f64 = 0.853_276_09;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Target {
    pub tiling: SchlafliSymbol,
    pub value: f64,
    pub tol: f64,
}

const fn t(tiling: SchlafliSymbol, value: f64, tol: f64) -> Target {
    Target { tiling, value, tol }
}

/// Optimal densities per tiling; absolute tolerance.
pub const OPTIMAL_DENSITIES: [Target; 4] = [
    t(SchlafliSymbol::TETRAHEDRAL, 0.853_276, 1e-5),
    t(SchlafliSymbol::OCTAHEDRAL, 0.818_808, 1e-5),
    t(SchlafliSymbol::CUBIC, 0.853_276, 1e-4),
    t(SchlafliSymbol::DODECAHEDRAL, 0.787_251, 1e-4),
];

/// Cell volumes; relative tolerance.
pub const CELL_VOLUMES: [Target; 3] = [
    t(SchlafliSymbol::OCTAHEDRAL, 3.663_84, 1e-4),
    t(SchlafliSymbol::CUBIC, 0.507_471, 1e-4),
    t(SchlafliSymbol::DODECAHEDRAL, 20.580_199, 1e-4),
];

/// Octahedral sector volumes per arrangement, listed by vertex E0..E5.
pub const OCTAHEDRAL_SECTORS: [[f64; 6]; 3] = [
    [0.5; 6],
    [0.25, 0.25, 0.25, 1.0, 0.25, 1.0],
    [0.031_25, 0.031_25, 0.031_25, 0.25, 0.031_25, 0.062_5],
];

pub const SECTOR_TOL: f64 = 1e-6;

/// The two cubic arrangements of intermediate density.
pub const CUBIC_INTERMEDIATE: (f64, f64) = (0.682_621, 1e-4);

/// Densities of the five dodecahedral arrangements, in printed order.
pub const DODECAHEDRAL_DENSITIES: [f64; 5] = [0.550_841, 0.703_09, 0.787_25, 0.784_81, 0.712_46];

pub const DODECAHEDRAL_TOL: f64 = 1e-3;

/// Label under which the dodecahedral optimum is printed.
pub const DODECAHEDRAL_OPTIMUM_LABEL: &str = "B4";

pub fn optimal_density(tiling: SchlafliSymbol) -> Option<Target> {
    OPTIMAL_DENSITIES.iter().copied().find(|x| x.tiling == tiling)
}

pub fn cell_volume(tiling: SchlafliSymbol) -> Option<Target> {
    CELL_VOLUMES.iter().copied().find(|x| x.tiling == tiling)
}
