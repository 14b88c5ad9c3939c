//! Exact-arithmetic toolkit for finite subgroups of integer matrix groups,
//! algebraic tori modeled as Galois lattices, quadratic forms in every
//! characteristic, the explicit characteristic-p division algebra, residue
//! calculus for Artin–Schreier classes on the projective line, and a
//! provenance-carrying ledger of explicit bounds.
//!
//! Everything here computes with exact integers, rationals, or small finite
//! fields; there is no floating point anywhere in the crate.

pub mod bounds;
pub mod brauer;
pub mod csa;
pub mod exactalg;
pub mod glnz;
pub mod quadform;
pub mod torus;
pub mod verify;

pub use exactalg::{FiniteField, FqElem, IntMatrix, ModMatrix, SnfDecomposition};
pub use glnz::MatrixGroup;
pub use torus::GaloisLattice;
