//! Exact workbench for translational tilings and spectral sets.
//!
//! The crate implements connectification operators over integer lattices
//! and rational unit-cube complexes — folded bridges, generalized
//! products, stacking and spiral bridges — together with the machinery
//! needed to verify their finitely checkable preservation properties:
//! exact-cover tiling search on finite abelian groups, exact Fourier
//! zero sets via cyclotomic arithmetic, spectrum search and the coset
//! filter. Everything is deterministic and decided in exact arithmetic.

pub mod bridges;
pub mod cubes;
pub mod cyclotomic;
pub mod error;
pub mod lattice;
pub mod rational;
pub mod spectral;
pub mod torus;

pub use error::{Error, Result};
pub use lattice::{Connectivity, LatticeSet, Point};
