use thiserror::Error;

use crate::lattice::ScaledCoord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("lattice size L={0} is too small: offsets +2 and -2 alias modulo 4L for L < 2")]
    LatticeTooSmall(usize),

    #[error("3D warm-up needs an even L to 2-color the cubes, got L={0}")]
    OddLattice(usize),

    #[error("{0:?} is not a cell of the octaplex tessellation")]
    NotACell(ScaledCoord),

    #[error("{0:?} is not a vertex")]
    NotAVertex(ScaledCoord),

    #[error("dimension {0} is outside 0..=4")]
    BadDimension(usize),

    #[error("exhaustive distance search is limited to L=2, got L={0}")]
    SearchTooLarge(usize),

    #[error("arity {arity} with flip position {flip} is not a valid sandwich")]
    BadSandwich { arity: usize, flip: usize },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
