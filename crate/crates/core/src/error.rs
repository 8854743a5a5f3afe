use std::collections::BTreeSet;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty generator list")]
    NoGenerators,

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),

    #[error("edge {edge} refers to unknown vertex {vertex:?}")]
    UnknownVertex { edge: usize, vertex: String },

    #[error("edge {edge} is a loop at vertex {vertex:?}")]
    LoopEdge { edge: usize, vertex: String },

    #[error("edge {edge} duplicates edge {first} (multigraphs are not supported)")]
    DuplicateEdge { edge: usize, first: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("edge {0} is a bridge")]
    Bridge(usize),

    #[error("empty basis list")]
    NoBases,

    #[error("basis {index} has {found} elements, expected {expected}")]
    UnequalBasisSizes {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("element {element} outside ground set [1, {ground_size}]")]
    ElementOutOfRange { element: usize, ground_size: usize },

    #[error("basis {0:?} listed twice")]
    DuplicateBasis(BTreeSet<usize>),

    #[error("element {0} lies in every basis")]
    Coloop(usize),

    #[error("element {0} lies in no basis")]
    Loop(usize),

    #[error("basis exchange fails for {u:?} and {v:?}")]
    ExchangeViolated {
        u: BTreeSet<usize>,
        v: BTreeSet<usize>,
    },

    #[error("index sets overlap in {0:?}")]
    OverlappingSets(BTreeSet<usize>),

    #[error("coordinate {coord} outside [1, {dim}]")]
    CoordinateOutOfRange { coord: usize, dim: usize },

    #[error("sequence length {length} outside [0, {max}]")]
    LengthOutOfRange { length: usize, max: usize },

    #[error("sector set must be a nonempty proper subset of [1, {dim}]")]
    InvalidSectors { dim: usize },

    #[error("parameters k = {k}, d = {d} out of range: {reason}")]
    ParameterRange { k: usize, d: usize, reason: &'static str },

    #[error("halfspace does not contain generator {0}")]
    NotContaining(usize),

    #[error("search exceeded the cap of {0} candidates")]
    CapExceeded(u64),
}
