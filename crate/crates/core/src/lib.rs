//! Toolkit for balanced bipartite digraphs.
//!
//! A balanced bipartite digraph has two parts `X = {x0, .., x(a-1)}` and
//! `Y = {y0, .., y(a-1)}` of equal size, arcs only between parts, and no
//! loops or parallel arcs. The crate provides:
//!
//! - [`digraph`]: the core representation, builder, and a line-oriented
//!   text format (`bbd <a>` header plus an `a`-by-`a` digit matrix).
//! - [`analysis`]: connectivity, cut vertices, dominating pairs, and the
//!   degree conditions used by the theorem checkers.
//! - [`cycles`]: exact-length cycle search, cycle spectra, and an
//!   independent brute-force oracle for cross-checking.
//! - [`canon`]: named exemplar constructions, isomorphism testing, and a
//!   canonical form for deduplication.
//! - [`verify`]: hypothesis/conclusion verdicts for the supported
//!   theorems about cycle structure under degree conditions.
//! - [`hunt`]: seeded instance generators and deterministic, parallel
//!   counterexample campaigns.

pub mod analysis;
pub mod canon;
pub mod cycles;
pub mod digraph;
pub mod error;
pub mod hunt;
pub mod verify;

pub use digraph::{ArcCode, BipartiteDigraph, Degree, DigraphBuilder, Part, Vertex, VertexSet};
pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
