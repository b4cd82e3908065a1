//! Enumeration of rational nodal and rational 1-cuspidal curves on toric
//! surfaces through their tropical limits.

pub mod acceptance;
pub mod count;
pub mod curve;
pub mod error;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod net_oracle;
mod par;
pub mod quadcusp;
pub mod rational;
pub mod subdivision;

pub use error::{Error, Result};
