use std::cmp::Ordering;
use std::fmt;

/// Largest supported rank: one lowercase letter per generator.
pub const MAX_RANK: u8 = 26;

/// A generator or its inverse. Stored as a signed index: `+i` is the i-th
/// generator (1-based), `-i` its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter(i8);

impl Letter {
    /// Panics if `generator` is outside `1..=26`.
    pub fn new(generator: u8, positive: bool) -> Self {
        assert!((1..=MAX_RANK).contains(&generator), "generator {generator} out of range");
        let g = generator as i8;
        Letter(if positive { g } else { -g })
    }

    pub fn from_signed(v: i8) -> Self {
        assert!(v != 0 && v.unsigned_abs() <= MAX_RANK, "signed letter {v} out of range");
        Letter(v)
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a'..='z' => Some(Letter((c as u8 - b'a' + 1) as i8)),
            'A'..='Z' => Some(Letter(-((c as u8 - b'A' + 1) as i8))),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        let g = self.generator() - 1;
        if self.is_positive() {
            (b'a' + g) as char
        } else {
            (b'A' + g) as char
        }
    }

    pub fn generator(self) -> u8 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn signed(self) -> i8 {
        self.0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Dense index in `0..2g` following the order a < A < b < B < ...
    pub fn index(self) -> usize {
        2 * (self.generator() as usize - 1) + usize::from(!self.is_positive())
    }

    pub fn from_index(i: usize) -> Self {
        Letter::new((i / 2 + 1) as u8, i.is_multiple_of(2))
    }

    /// All 2g signed generators in canonical order.
    pub fn all(rank: u8) -> impl Iterator<Item = Letter> {
        (0..2 * rank as usize).map(Letter::from_index)
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index().cmp(&other.index())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}
