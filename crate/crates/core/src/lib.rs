//! Cluster algebras of triangulated marked surfaces, exact seed mutation,
//! and the commutative (q = 1) skein shadow of tagged arcs.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact:
//! coefficients are arbitrary-precision integers and equality of values is
//! structural equality of canonical forms.
//!
//! * [`laurent`]: sparse multivariate Laurent polynomials over `Z`.
//! * [`surface`]: marked surfaces, ideal and tagged triangulations, flips.
//! * [`cluster`]: seeds, mutation, exchange-graph exploration.
//! * [`skein`]: the tag-to-vertex map, vertex-class expansion, flip checks.
//! * [`generators`]: enumeration of the finite skein generating set.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cluster;
pub mod generators;
pub mod laurent;
mod matrix;
pub mod skein;
pub mod surface;

pub use cluster::{FlipGraph, Seed};
pub use laurent::{LaurentPoly, VarTable};
pub use matrix::{ExchangeMatrix, MatrixError};
pub use surface::{MarkedSurface, TaggedTriangulation, Triangulation};
