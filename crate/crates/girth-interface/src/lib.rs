//! Black/white/gray partitions of the signed generators of a free group,
//! the crossing count of a cyclic word against such a partition, and the
//! extraction of partitions from a two-coloring of the ends of the Cayley
//! tree.

mod interface;
mod subordination;

use girth_word::WordError;
use thiserror::Error;

pub use girth_word::complexity;
pub use interface::{
    enumerate_d_discs, enumerate_d_half_discs, wedge, wedge_partial, Color, DDisc, DHalfDisc, DInterface,
    PartialColoring,
};
pub use subordination::{FiniteTreeColoring, Subordinate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterfaceError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("expected {} colors for rank {rank}, got {len}", 2 * *rank as usize)]
    WrongLength { rank: u8, len: usize },
    #[error("black set is empty")]
    EmptyBlack,
    #[error("white set is empty")]
    EmptyWhite,
    #[error("a disc has no gray letters, found {0}")]
    NotDisc(usize),
    #[error("a half-disc has exactly one gray letter, found {0}")]
    NotHalfDisc(usize),
    #[error("parse error at offset {offset}: {reason}")]
    Parse { offset: usize, reason: String },
    #[error("malformed tree coloring: {0}")]
    MalformedColoring(String),
}
