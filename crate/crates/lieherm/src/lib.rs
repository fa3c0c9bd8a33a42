//! Exact computations for invariant Hermitian structures on Lie groups and
//! generalized flag manifolds.

// Tensor code indexes several arrays by one subscript; explicit ranges read closer to the formulas.
#![allow(clippy::needless_range_loop)]

pub mod coordgeo;
pub mod flagspace;
pub mod groupgeom;
pub mod hermgeo;
pub mod liealg;
pub mod linalg;
pub mod rootsys;
pub mod scalar;
