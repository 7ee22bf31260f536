//! Combinatorial engine for perverse schobers parametrized by ribbon graphs.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! - [`ribbon_graph`]: ribbon graphs, their exit path categories, edge
//!   contraction and the surface obtained by thickening,
//! - [`curves`]: combinatorial curves on the thickened surface with the
//!   vertices removed, line fields relative to the canonical line field of the
//!   graph, winding numbers and framings,
//! - [`word`]: the group of functor words (central shifts times a free group
//!   on cotwist and decoration symbols) in which transports take values,
//! - [`schober`]: transport, framed monodromy, contraction pushforward,
//!   classification of nonsingular schobers and the sign solvers used when
//!   gluing Calabi-Yau structures,
//! - [`k0`] and [`matrix`]: exact integer decategorification, Euler forms,
//!   Serre matrices and Calabi-Yau identities at the level of `K_0`.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod curves;
mod error;
pub mod k0;
pub mod matrix;
pub mod ribbon_graph;
pub mod schober;
pub mod word;

pub use error::{Error, Result};
pub use ribbon_graph::{EdgeId, HalfEdge, RibbonGraph, Vertex};
pub use word::{FunctorWord, RelationSet, Symbol};
