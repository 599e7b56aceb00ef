//! Exact intersection-theoretic calculus for blowups of Poisson surfaces:
//! Picard lattices of iterated blowups, transport of numerical sheaf classes
//! along minimal lifts and pseudo-twists, the α-twisted Euler characteristic,
//! and the combinatorics of exceptional sheaves.

pub mod cli;
pub mod config;
pub mod error;
pub mod exceptional_cat;
pub mod kclass;
pub mod linalg;
pub mod ops;
pub mod picard_lattice;
pub mod poisson_surface;
pub mod pseudo_twist;
pub mod rigidity;

pub use error::{Error, Result};
