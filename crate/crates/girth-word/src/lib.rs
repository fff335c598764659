//! Free-group words over at most 26 generators.
//!
//! Letters are written `a..z` for generators and `A..Z` for their inverses.
//! Cyclic words are kept in their lexicographically least rotation under the
//! order `a < A < b < B < ...`.

mod automorphism;
mod letter;
mod word;

pub use automorphism::{Automorphism, Step};
pub use letter::{Letter, MAX_RANK};
pub use word::{check_rank, CyclicWord, Word, WordError};

/// Cyclically reduced length of `w`.
pub fn complexity(w: &Word) -> usize {
    w.cyclic().len()
}
