use thiserror::Error;

use crate::coxeter::SchlafliSymbol;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported symbol {0}")]
    UnsupportedSymbol(SchlafliSymbol),
    #[error("{0} is not a fully asymptotic tiling")]
    NotFullyAsymptotic(SchlafliSymbol),
    #[error("horoball at vertex {vertex} crosses non-adjacent face {face}")]
    FaceOverflow { vertex: usize, face: usize },
    #[error("x = {x} outside admissible interval [{lo}, {hi}]")]
    OutsideInterval { x: f64, lo: f64, hi: f64 },
    #[error("invalid packing: {0}")]
    InvalidPacking(String),
    #[error("unknown family `{family}` for {tiling}; available: {available}")]
    UnknownFamily {
        tiling: SchlafliSymbol,
        family: String,
        available: String,
    },
    #[error("unknown configuration `{label}` for {tiling}; catalog: {available}")]
    UnknownConfiguration {
        tiling: SchlafliSymbol,
        label: String,
        available: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
