//! Exact computations with cohomogeneity one group diagrams for `S³×S³`.
//!
//! Everything runs over `Q(√2)`: group elements are pairs of unit quaternions
//! with coordinates `a + b√2`, so membership and rank questions are decided
//! without tolerances.

pub mod catalog_scan;
pub mod diagram;
pub mod error;
pub mod groups;
pub mod hitchin;
pub mod obstruct;
pub mod qfield;
pub mod topology;
pub mod weyl;

pub use error::{Error, Result};
