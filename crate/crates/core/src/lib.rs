//! Rank-distance codes of symmetric and Hermitian matrices, realized as sets of
//! generators of symplectic and Hermitian polar spaces.

pub mod error;
pub mod field;
pub mod linalg;
pub mod forms;
pub mod polar;
pub mod spreads;
pub mod codes;
pub mod io;
pub mod bounds;
pub mod graphs;

pub use error::{Error, Result};
