//! Steiner loops, their central extensions over `F2`, and the computations
//! around the free Steiner loop of nilpotency class two.

pub mod coho;
pub mod error;
pub mod f2;
pub mod io;
pub mod loops;
pub mod report;
pub mod selftest;
pub mod sts;
pub mod sword;

pub use error::{Error, Result};
pub use f2::{F2Matrix, F2Vector, IndexSubset};
