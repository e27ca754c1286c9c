//! Exact geometry-of-numbers toolkit and solubility census for projective
//! hypersurfaces over the rationals.

pub mod error;
pub mod ivec;
pub mod lattice;
pub mod local;
pub mod mat;
pub mod census;
pub mod counting;
pub mod minima;
pub mod numerics;
pub mod tau;
pub mod veronese;

pub use error::{Error, Result};
