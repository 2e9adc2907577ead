//! Horoball packings in the fully asymptotic Coxeter honeycombs
//! (3,3,6), (3,4,4), (4,3,6) and (5,3,6) of hyperbolic 3-space.
//!
//! The projective model is used throughout: points are homogeneous vectors
//! of R^{1,3} with the Lorentz form ⟨x,y⟩ = −x⁰y⁰ + x¹y¹ + x²y² + x³y³.

pub mod cli;
pub mod coxeter;
pub mod error;
pub mod horoball;
pub mod lorentz;
pub mod packing;
pub mod polytope;
pub mod reference;
pub mod volume;

pub use error::{Error, Result};
