use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge {0} has {1} incidences, expected exactly 2")]
    DanglingEdge(u32, usize),

    #[error("boundary point {0} has {1} incidences, expected exactly 1")]
    BadEndpoint(usize, usize),

    #[error("odd endpoint count {0}")]
    OddEndpointCount(usize),

    #[error("diagram admits no planar embedding with the given boundary order")]
    NonPlanar,

    #[error("unknown crossing id {0}")]
    UnknownCrossing(usize),

    #[error("diagram has {0} endpoints, expected a closed diagram")]
    NotClosed(usize),

    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },

    #[error("strand count mismatch: word is on {word} strands, vector needs {expected}")]
    StrandMismatch { word: usize, expected: usize },

    #[error("position {pos} out of range 1..={max}")]
    PositionOutOfRange { pos: usize, max: usize },

    #[error("vectors live over different n: {0} vs {1}")]
    MismatchedN(usize, usize),

    #[error("substitution at A = 0 is not defined")]
    ZeroSubstitution,

    #[error("refusing {0} crossings, exhaustive state sum is capped at {1}")]
    CrossingCapExceeded(usize, usize),

    #[error("desk-scale cap exceeded: {0}")]
    CapExceeded(String),

    #[error("move not applicable at the given site: {0}")]
    InapplicableMove(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
