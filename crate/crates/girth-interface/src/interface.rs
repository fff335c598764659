use std::fmt;

use girth_word::{check_rank, CyclicWord, Letter, WordError};

use crate::InterfaceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
    Gray,
}

impl Color {
    /// Exchanges black and white; gray is fixed.
    pub fn swapped(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
            Color::Gray => Color::Gray,
        }
    }
}

/// A partition of the 2g signed generators into black, white and gray sets,
/// with black and white both nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DInterface {
    rank: u8,
    colors: Vec<Color>,
}

impl DInterface {
    /// `colors` is indexed by [`Letter::index`].
    pub fn new(rank: u8, colors: Vec<Color>) -> Result<Self, InterfaceError> {
        check_rank(rank)?;
        if colors.len() != 2 * rank as usize {
            return Err(InterfaceError::WrongLength { rank, len: colors.len() });
        }
        if !colors.contains(&Color::Black) {
            return Err(InterfaceError::EmptyBlack);
        }
        if !colors.contains(&Color::White) {
            return Err(InterfaceError::EmptyWhite);
        }
        Ok(DInterface { rank, colors })
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, l: Letter) -> Color {
        self.colors[l.index()]
    }

    /// Letters of the given color in canonical order.
    pub fn letters_of(&self, c: Color) -> Vec<Letter> {
        Letter::all(self.rank).filter(|&l| self.color(l) == c).collect()
    }

    pub fn swapped(&self) -> DInterface {
        DInterface { rank: self.rank, colors: self.colors.iter().map(|c| c.swapped()).collect() }
    }

    /// Representative with the lowest non-gray letter colored black.
    pub fn canonical(&self) -> DInterface {
        let first = self.colors.iter().find(|&&c| c != Color::Gray);
        if first == Some(&Color::White) {
            self.swapped()
        } else {
            self.clone()
        }
    }

    pub fn as_partial(&self) -> PartialColoring {
        PartialColoring {
            rank: self.rank,
            colors: self.colors.iter().map(|&c| if c == Color::Gray { None } else { Some(c) }).collect(),
        }
    }

    /// Parses `B:<letters> W:<letters> G:<letters>`, with `-` for an empty
    /// set. The rank is the largest generator mentioned, and every signed
    /// generator up to it must appear exactly once.
    pub fn parse(text: &str) -> Result<Self, InterfaceError> {
        let perr = |offset: usize, reason: &str| InterfaceError::Parse { offset, reason: reason.to_string() };
        let mut sets: [Option<Vec<Letter>>; 3] = [None, None, None];
        let mut pos = 0;
        for (i, field) in text.split(' ').enumerate() {
            let start = pos;
            pos += field.len() + 1;
            if i >= 3 {
                return Err(perr(start, "expected exactly three fields"));
            }
            let (tag, want) = match i {
                0 => ("B:", Color::Black),
                1 => ("W:", Color::White),
                _ => ("G:", Color::Gray),
            };
            let body = field.strip_prefix(tag).ok_or_else(|| perr(start, &format!("expected field {tag}")))?;
            let mut letters = Vec::new();
            if body != "-" {
                if body.is_empty() {
                    return Err(perr(start + 2, "empty set must be written '-'"));
                }
                for (k, ch) in body.char_indices() {
                    let l = Letter::from_char(ch).ok_or_else(|| perr(start + 2 + k, &format!("unexpected {ch:?}")))?;
                    letters.push(l);
                }
            }
            sets[want as usize] = Some(letters);
        }
        let sets: Vec<Vec<Letter>> = sets
            .into_iter()
            .map(|s| s.ok_or_else(|| perr(text.len(), "expected exactly three fields")))
            .collect::<Result<_, _>>()?;
        let rank = sets.iter().flatten().map(|l| l.generator()).max().unwrap_or(0);
        if rank == 0 {
            return Err(perr(0, "no letters"));
        }
        let mut colors: Vec<Option<Color>> = vec![None; 2 * rank as usize];
        for (set, c) in sets.iter().zip([Color::Black, Color::White, Color::Gray]) {
            for &l in set {
                if colors[l.index()].replace(c).is_some() {
                    return Err(perr(0, &format!("letter {l} listed twice")));
                }
            }
        }
        if let Some(i) = colors.iter().position(Option::is_none) {
            return Err(perr(0, &format!("letter {} missing", Letter::from_index(i))));
        }
        DInterface::new(rank, colors.into_iter().map(Option::unwrap).collect())
    }
}

impl fmt::Display for DInterface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (tag, c)) in [("B", Color::Black), ("W", Color::White), ("G", Color::Gray)].into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{tag}:")?;
            let ls = self.letters_of(c);
            if ls.is_empty() {
                write!(f, "-")?;
            }
            for l in ls {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

/// A coloring where some letters carry no color. Pairs touching an uncolored
/// letter never count as crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialColoring {
    rank: u8,
    colors: Vec<Option<Color>>,
}

impl PartialColoring {
    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn color(&self, l: Letter) -> Option<Color> {
        self.colors[l.index()]
    }
}

/// An interface with no gray letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DDisc(DInterface);

impl DDisc {
    pub fn new(iface: DInterface) -> Result<Self, InterfaceError> {
        let gray = iface.letters_of(Color::Gray).len();
        if gray != 0 {
            return Err(InterfaceError::NotDisc(gray));
        }
        Ok(DDisc(iface))
    }

    pub fn interface(&self) -> &DInterface {
        &self.0
    }

    pub fn rank(&self) -> u8 {
        self.0.rank
    }

    pub fn color(&self, l: Letter) -> Color {
        self.0.color(l)
    }
}

impl fmt::Display for DDisc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// An interface with exactly one gray letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DHalfDisc(DInterface);

impl DHalfDisc {
    pub fn new(iface: DInterface) -> Result<Self, InterfaceError> {
        let gray = iface.letters_of(Color::Gray).len();
        if gray != 1 {
            return Err(InterfaceError::NotHalfDisc(gray));
        }
        Ok(DHalfDisc(iface))
    }

    pub fn interface(&self) -> &DInterface {
        &self.0
    }

    pub fn rank(&self) -> u8 {
        self.0.rank
    }

    pub fn color(&self, l: Letter) -> Color {
        self.0.color(l)
    }

    pub fn gray(&self) -> Letter {
        self.0.letters_of(Color::Gray)[0]
    }

    /// Black letters black, the gray letter white, everything else uncolored.
    pub fn black_vs_gray(&self) -> PartialColoring {
        self.aux(Color::Black)
    }

    /// White letters black, the gray letter white, everything else uncolored.
    pub fn white_vs_gray(&self) -> PartialColoring {
        self.aux(Color::White)
    }

    fn aux(&self, keep: Color) -> PartialColoring {
        let colors = self
            .0
            .colors
            .iter()
            .map(|&c| match c {
                Color::Gray => Some(Color::White),
                c if c == keep => Some(Color::Black),
                _ => None,
            })
            .collect();
        PartialColoring { rank: self.0.rank, colors }
    }
}

impl fmt::Display for DHalfDisc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Number of cyclic adjacent pairs `(x, y)` of `w` with `x⁻¹` and `y` on
/// opposite sides of the black/white split.
pub fn wedge(w: &CyclicWord, a: &DInterface) -> Result<usize, InterfaceError> {
    wedge_partial(w, &a.as_partial())
}

pub fn wedge_partial(w: &CyclicWord, a: &PartialColoring) -> Result<usize, InterfaceError> {
    if w.rank() != a.rank {
        return Err(WordError::RankMismatch { left: w.rank(), right: a.rank }.into());
    }
    Ok(w.cyclic_pairs()
        .filter(|&(x, y)| {
            matches!(
                (a.color(x.inverse()), a.color(y)),
                (Some(Color::Black), Some(Color::White)) | (Some(Color::White), Some(Color::Black))
            )
        })
        .count())
}

/// All discs up to exchanging black and white, with `a` black. Yields
/// `2^(2g-1) - 1` items.
pub fn enumerate_d_discs(rank: u8) -> impl Iterator<Item = DDisc> {
    check_rank(rank).expect("valid rank");
    let n = 2 * rank as usize;
    (1u64..1 << (n - 1)).map(move |mask| {
        let colors =
            (0..n).map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { Color::White } else { Color::Black }).collect();
        DDisc(DInterface { rank, colors })
    })
}

/// All half-discs up to exchanging black and white, with the lowest
/// non-gray letter black. Yields `2g (2^(2g-2) - 1)` items.
pub fn enumerate_d_half_discs(rank: u8) -> impl Iterator<Item = DHalfDisc> {
    check_rank(rank).expect("valid rank");
    let n = 2 * rank as usize;
    (0..n).flat_map(move |gray| {
        let rest: Vec<usize> = (0..n).filter(|&i| i != gray).collect();
        let masks = if n >= 2 { 1u64..1 << (n - 2) } else { 1..1 };
        masks.map(move |mask| {
            let mut colors = vec![Color::Black; n];
            colors[gray] = Color::Gray;
            for (k, &i) in rest.iter().enumerate().skip(1) {
                if mask >> (k - 1) & 1 == 1 {
                    colors[i] = Color::White;
                }
            }
            DHalfDisc(DInterface { rank, colors })
        })
    })
}
