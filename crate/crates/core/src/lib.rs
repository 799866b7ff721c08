#![cfg_attr(not(test), no_std)]
//! Exact-arithmetic toolkit for perfect Euclidean lattices.

extern crate alloc;

pub mod arith;
pub mod bounds;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod geometry;
pub mod graph;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod overlattice;
pub mod perfection;
pub mod reconstruct;

pub use error::{Error, Result};
