use thiserror::Error;

use crate::mask::VertexMask;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex set {mask} is not contained in the ground set {ground}")]
    OutOfRange { mask: VertexMask, ground: VertexMask },
    #[error("minimal non-faces must be non-empty")]
    EmptyNonFace,
    #[error("{0} and {1} are comparable; minimal non-faces must form an antichain")]
    NotAntichain(VertexMask, VertexMask),
    #[error("{0} is not a face")]
    NotAFace(VertexMask),
    #[error("vertex {0} is not in the ground set")]
    NoSuchVertex(u8),
    #[error("ground sets {0} and {1} of a join must be disjoint")]
    OverlappingJoin(VertexMask, VertexMask),
    #[error("too many vertices: {0} (at most {1} supported)")]
    TooManyVertices(usize, usize),
    #[error("minimal non-face #{index} ({face}) has no private vertex; the Taylor resolution is not minimal")]
    NotMinimalTaylor { index: usize, face: VertexMask },
    #[error("Taylor degree {degree} out of range 1..={r}")]
    TaylorDegree { degree: usize, r: usize },
    #[error("differentials do not compose to zero at degree {0}")]
    NotAComplex(i32),
    #[error("matrix dimensions do not chain at degree {0}")]
    DimensionMismatch(i32),
    #[error("not a subcomplex: {0} is a face of the smaller complex only")]
    NotSubcomplex(VertexMask),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cochain is not homogeneous")]
    Inhomogeneous,
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("operation requires a field, got {0}")]
    NeedsField(String),
    #[error("unsupported coefficient ring `{0}`")]
    UnknownRing(String),
    #[error("exhaustive enumeration supports at most {max} vertices, got {got}")]
    ExhaustiveTooLarge { got: u8, max: u8 },
}

pub type Result<T> = std::result::Result<T, Error>;
