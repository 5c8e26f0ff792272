use thiserror::Error;

use crate::rigidity::Certificate;
use crate::triangulation::ValidationReport;

/// Errors raised by the triangulation, flip, arc and complex layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("surface of genus {genus} with {boundary} boundary components has no triangulation")]
    NotTriangulable { genus: u32, boundary: u32 },

    #[error("surface must have at least one boundary component")]
    NoBoundary,

    #[error("{what} index {index} out of range (len {len})")]
    IndexOutOfRange { what: &'static str, index: usize, len: usize },

    #[error("invalid triangulation: {0}")]
    Validation(ValidationReport),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("arc {arc} is not flippable (folded side of a self-folded triangle)")]
    NotFlippable { arc: usize },

    #[error("resource limit reached: more than {cap} nodes")]
    ResourceLimit { cap: usize },

    #[error("invalid arc coordinates: {0}")]
    InvalidCoordinates(String),

    #[error("flattening did not terminate after {steps} steps")]
    NonTermination { steps: usize },

    #[error("surfaces differ: {left} vs {right}")]
    SurfaceMismatch { left: String, right: String },

    #[error("complex of {0} is infinite; use a flip-ball slice")]
    NotFinite(String),

    #[error("maximal simplices are not connected within the slice")]
    NotConnectedWithinSlice,

    #[error("vertex map is undefined on vertex {0}")]
    UndefinedVertex(usize),

    #[error("arcs are not simultaneously edges of the triangulation")]
    NotRealizable,

    #[error("no flip word of length at most {max_len} separates the neighbours of the triangle")]
    NeighbourSearchExhausted { max_len: usize },

    #[error("search exhausted within cap; connectivity inconclusive")]
    Inconclusive,

    #[error("{0}")]
    Unsupported(String),

    #[error("vertex {0} is outside the domain of the map")]
    VertexOutsideDomain(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no triangulation in the slice contains the image: {0}")]
    WitnessNotFound(String),

    #[error("{0}")]
    Refuted(Certificate),
}

pub type Result<T> = std::result::Result<T, Error>;
