//! Exact computations on nodal threefolds: defects from node positions,
//! Chebyshev-type examples and their nodes, projective small resolutions
//! counted by linear programming, and upper bounds on node counts.

pub mod arnold;
pub mod catalog;
pub mod chmutov;
pub mod cli;
pub mod defect;
mod error;
pub mod exactfield;
pub mod polycheb;
pub mod reslattice;

pub use error::{Error, Result};
