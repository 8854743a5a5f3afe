//! Exact combinatorics of tropical matroid polytopes.
//!
//! Given a matroid (from a graph or an explicit basis list), the crate builds the
//! tropical convex hull of the negative basis incidence vectors and computes its
//! types, pseudovertices, bounded cells, the full tropical complex with its
//! f-vector, the coarse-type ideal, and minimal halfspace descriptions of tropical
//! hypersimplices. Closed-form counts are checked against brute-force enumeration.
//!
//! All arithmetic is exact. Coordinates `1..=d+1` and generator indices `1..=n`
//! are 1-based throughout.

pub mod error;
pub mod minplus;
pub mod matroid;
pub mod polytope;
pub mod complex;
pub mod ideal;
pub mod halfspace;
pub mod fixtures;
pub mod check;
mod diffcons;

pub use error::{Error, Result};
