//! Staircases, their partial orders, and lexicographic Gröbner basins of
//! points in the plane.

pub mod basinlab;
pub mod error;
pub mod groebner;
pub mod orders;
pub mod staircase;

pub use error::{Error, Result};
pub use staircase::{LatticePoint, StandardSet};
