//! Exact Tukey halfspace depth, the halfspace median, and its finite-sample
//! breakdown point under point-mass contamination.

pub mod attack;
mod cells;
pub mod depth;
pub mod error;
pub mod fsbp;
pub mod geometry;
mod polytope;
pub mod rational;

pub use error::{Error, Result};
