//! Strongest polynomial moment invariants for probabilistic polynomial loops,
//! plus executable forms of the Skolem → P2P → SPInv reductions.

pub mod algebra;
pub mod cfinite;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod intmat;
pub mod linalg;
pub mod loops;
pub mod moments;
pub mod reductions;
pub mod relations;

pub use error::{Error, Result};
