//! Error type shared across the crate.

use crate::digraph::Vertex;
use thiserror::Error;

/// Errors produced by constructors, parsers, and guarded algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Half-order zero is rejected; the smallest supported digraph has one
    /// vertex per part.
    #[error("half-order must be at least 1")]
    InvalidHalfOrder,

    /// Bitset-backed adjacency limits each part to 32 vertices.
    #[error("half-order {requested} exceeds the supported maximum of {max}", max = crate::digraph::MAX_HALF_ORDER)]
    HalfOrderTooLarge { requested: usize },

    /// Arcs must cross parts; `x-x` and `y-y` arcs do not exist.
    #[error("arc {from} -> {to} stays within one part")]
    SamePartArc { from: Vertex, to: Vertex },

    /// Vertex index is outside `0..half_order`.
    #[error("vertex {vertex} out of range for half-order {half_order}")]
    VertexOutOfRange { vertex: Vertex, half_order: usize },

    /// Text input violated the digraph file format. `line` is 1-based.
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// `arcs_between` requires disjoint vertex sets.
    #[error("vertex sets overlap")]
    OverlappingSets,

    /// The brute-force cycle oracle is only run on small orders.
    #[error("order {order} exceeds the brute-force oracle limit of {max}", max = crate::cycles::ORACLE_MAX_ORDER)]
    OracleOrderTooLarge { order: usize },

    /// Exhaustive enumeration grows as `4^(a^2)` and is capped accordingly.
    #[error("half-order {half_order} exceeds the exhaustive enumeration limit of {max}", max = crate::hunt::EXHAUSTIVE_MAX_HALF_ORDER)]
    EnumerationTooLarge { half_order: usize },

    /// A generation spec failed validation.
    #[error("invalid generation spec: {reason}")]
    InvalidGenSpec { reason: String },
}
