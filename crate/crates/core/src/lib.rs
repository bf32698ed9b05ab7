//! Topological zeta functions of monomial ideals with polynomial volume
//! forms, computed exactly from Newton polyhedra and cross-checked against
//! explicit principalizations in the plane.

pub mod analysis;
pub mod arith;
pub mod bsp;
pub mod cli;
pub mod error;
pub mod input;
pub mod lattice;
pub mod newton;
pub mod resolution;
pub mod zeta;

pub use error::{Error, Result};
