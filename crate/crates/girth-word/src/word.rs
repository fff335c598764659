use std::fmt;

use thiserror::Error;

use crate::letter::{Letter, MAX_RANK};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("rank {0} outside 1..=26")]
    BadRank(u8),
    #[error("unexpected character {ch:?} at offset {offset}")]
    BadChar { offset: usize, ch: char },
    #[error("letter {ch:?} at offset {offset} exceeds rank {rank}")]
    OutOfRank { offset: usize, ch: char, rank: u8 },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u8, right: u8 },
}

pub fn check_rank(rank: u8) -> Result<(), WordError> {
    if (1..=MAX_RANK).contains(&rank) {
        Ok(())
    } else {
        Err(WordError::BadRank(rank))
    }
}

/// A finite letter sequence over a free group of fixed rank. Not necessarily
/// reduced; see [`Word::reduce`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u8,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(rank: u8, letters: Vec<Letter>) -> Result<Self, WordError> {
        check_rank(rank)?;
        for (offset, l) in letters.iter().enumerate() {
            if l.generator() > rank {
                return Err(WordError::OutOfRank { offset, ch: l.to_char(), rank });
            }
        }
        Ok(Word { rank, letters })
    }

    pub fn empty(rank: u8) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// Parses the letter text form. Whitespace is not allowed; `1` and the
    /// empty string both denote the identity.
    pub fn parse(rank: u8, text: &str) -> Result<Self, WordError> {
        check_rank(rank)?;
        if text == "1" {
            return Ok(Word::empty(rank));
        }
        let mut letters = Vec::with_capacity(text.len());
        for (offset, ch) in text.char_indices() {
            let l = Letter::from_char(ch).ok_or(WordError::BadChar { offset, ch })?;
            if l.generator() > rank {
                return Err(WordError::OutOfRank { offset, ch, rank });
            }
            letters.push(l);
        }
        Ok(Word { rank, letters })
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Free reduction: cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn reduce(&self) -> Word {
        Word { rank: self.rank, letters: free_reduce(self.letters.iter().copied()) }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(&f), Some(&l)) => self.letters.len() == 1 || f != l.inverse(),
                _ => true,
            }
    }

    pub fn inverse(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Result<Word, WordError> {
        same_rank(self.rank, other.rank)?;
        let letters = free_reduce(self.letters.iter().chain(other.letters.iter()).copied());
        Ok(Word { rank: self.rank, letters })
    }

    /// Reduced form of `self^m`.
    pub fn pow(&self, m: usize) -> Word {
        let mut out = Word::empty(self.rank);
        for _ in 0..m {
            out = out.mul(self).expect("same rank");
        }
        out
    }

    /// Splits the reduced form as `conjugator · core · conjugator⁻¹` with a
    /// cyclically reduced core. The returned cyclic word stores the
    /// canonical rotation of the core, and the conjugator absorbs the
    /// rotation so the identity holds for the stored letters.
    pub fn cyclic_reduce(&self) -> (CyclicWord, Word) {
        let r = free_reduce(self.letters.iter().copied());
        let mut lo = 0;
        let mut hi = r.len();
        while hi - lo >= 2 && r[lo] == r[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        let core = &r[lo..hi];
        let shift = canonical_shift(core);
        let mut conj: Vec<Letter> = r[..lo].to_vec();
        conj.extend_from_slice(&core[..shift]);
        let conj = Word { rank: self.rank, letters: free_reduce(conj) };
        let mut rotated = core[shift..].to_vec();
        rotated.extend_from_slice(&core[..shift]);
        (CyclicWord { rank: self.rank, letters: rotated }, conj)
    }

    pub fn cyclic(&self) -> CyclicWord {
        self.cyclic_reduce().0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub(crate) fn same_rank(left: u8, right: u8) -> Result<(), WordError> {
    if left == right {
        Ok(())
    } else {
        Err(WordError::RankMismatch { left, right })
    }
}

pub(crate) fn free_reduce<I: IntoIterator<Item = Letter>>(it: I) -> Vec<Letter> {
    let mut buf: Vec<Letter> = Vec::new();
    for x in it {
        if buf.last() == Some(&x.inverse()) {
            buf.pop();
        } else {
            buf.push(x);
        }
    }
    buf
}

/// Start index of the lexicographically least rotation (naive, fine for the
/// word lengths this crate handles).
fn canonical_shift(w: &[Letter]) -> usize {
    let n = w.len();
    let mut best = 0;
    for s in 1..n {
        for k in 0..n {
            let a = w[(s + k) % n];
            let b = w[(best + k) % n];
            if a != b {
                if a < b {
                    best = s;
                }
                break;
            }
        }
    }
    best
}

/// A cyclically reduced word stored in its canonical (lexicographically
/// least) rotation. Equality is conjugacy-class equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    rank: u8,
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.clone() }
    }

    /// Iterates the cyclic adjacent pairs `(w[i], w[i+1 mod n])`.
    pub fn cyclic_pairs(&self) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        let n = self.letters.len();
        (0..n).map(move |i| (self.letters[i], self.letters[(i + 1) % n]))
    }

    /// The cyclic word of `w^m`; concatenated copies of a cyclically reduced
    /// word stay cyclically reduced.
    pub fn pow(&self, m: usize) -> CyclicWord {
        self.to_word().pow(m).cyclic()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_word(), f)
    }
}
