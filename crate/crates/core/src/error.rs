use thiserror::Error;

/// Errors raised by diagram, handle and obstruction computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid braid word: {0}")]
    InvalidBraid(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("color mismatch: {0}")]
    ColorMismatch(String),
    #[error("orientation mismatch: {0}")]
    OrientationMismatch(String),
    #[error("component {0} is neither red nor blue")]
    Uncolored(String),
    #[error("no {0} pattern at the requested site")]
    BadSite(String),
    #[error("framing of component {0} is not normalized to its writhe")]
    NotNormalized(String),
    #[error("handle {0} is not a 2-handle")]
    NotTwoHandle(String),
    #[error("unknown handle {0}")]
    UnknownHandle(String),
    #[error("2-handle {0} has odd winding and has no consistent pair of lifts")]
    OddWinding(String),
    #[error("cannot build cover: {0}")]
    UnsupportedCover(String),
    #[error("boundary homology is read from surgery diagrams without 3- or 4-handles")]
    ClosedHandles,
    #[error("spheres {i} and {j} are not homotopic ({i} and {j} differ in parity)")]
    NotHomotopic { i: i64, j: i64 },
    #[error("traces live over different groups")]
    GroupMismatch,
    #[error("invalid homotopy trace: {0}")]
    InvalidTrace(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("expected a single through-arc, found {0}")]
    ThroughArcs(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
