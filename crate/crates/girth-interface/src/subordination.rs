use std::collections::{HashMap, HashSet};

use girth_word::{check_rank, Letter, Word};

use crate::interface::{Color, DDisc, DHalfDisc, DInterface};
use crate::InterfaceError;

/// A two-coloring of the ends of the Cayley tree, described by a finite
/// connected set of vertices and a black or white label on every edge
/// leaving that set. All ends beyond a frontier edge take its label.
#[derive(Clone, Debug)]
pub struct FiniteTreeColoring {
    rank: u8,
    vertices: Vec<Word>,
    index: HashMap<Vec<Letter>, usize>,
    frontier: HashMap<(usize, Letter), Color>,
}

/// Interfaces read off a tree coloring, each tagged with its base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subordinate {
    Disc { base: Word, disc: DDisc },
    HalfDiscs([(Word, DHalfDisc); 2]),
}

fn malformed(msg: impl Into<String>) -> InterfaceError {
    InterfaceError::MalformedColoring(msg.into())
}

impl FiniteTreeColoring {
    /// Builds a coloring from its vertex set and frontier labels. Every
    /// frontier edge must be labeled exactly once, black or white.
    pub fn new(rank: u8, vertices: Vec<Word>, frontier: Vec<(Word, Letter, Color)>) -> Result<Self, InterfaceError> {
        check_rank(rank)?;
        if vertices.is_empty() {
            return Err(malformed("no vertices"));
        }
        let mut vertices: Vec<Word> = vertices.iter().map(Word::reduce).collect();
        vertices.sort_by(shortlex);
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.rank() != rank {
                return Err(malformed(format!("vertex {v} has rank {}", v.rank())));
            }
            if index.insert(v.letters().to_vec(), i).is_some() {
                return Err(malformed(format!("vertex {v} listed twice")));
            }
        }
        let mut c = FiniteTreeColoring { rank, vertices, index, frontier: HashMap::new() };
        c.check_connected()?;
        for (v, l, color) in frontier {
            let vi = c.lookup(&v.reduce()).ok_or_else(|| malformed(format!("frontier edge at non-vertex {v}")))?;
            if l.generator() > rank {
                return Err(malformed(format!("letter {l} exceeds rank {rank}")));
            }
            if c.neighbor(vi, l).is_some() {
                return Err(malformed(format!("edge {v}·{l} is interior")));
            }
            if color == Color::Gray {
                return Err(malformed(format!("frontier edge {v}·{l} is gray")));
            }
            if c.frontier.insert((vi, l), color).is_some() {
                return Err(malformed(format!("frontier edge {v}·{l} labeled twice")));
            }
        }
        for vi in 0..c.vertices.len() {
            for l in Letter::all(rank) {
                if c.neighbor(vi, l).is_none() && !c.frontier.contains_key(&(vi, l)) {
                    return Err(malformed(format!("frontier edge {}·{l} unlabeled", c.vertices[vi])));
                }
            }
        }
        let colors: HashSet<Color> = c.frontier.values().copied().collect();
        if !colors.contains(&Color::Black) || !colors.contains(&Color::White) {
            return Err(malformed("frontier needs both a black and a white edge"));
        }
        Ok(c)
    }

    /// Convenience constructor labeling each frontier edge with `label`.
    pub fn from_fn(
        rank: u8,
        vertices: Vec<Word>,
        label: impl Fn(&Word, Letter) -> Color,
    ) -> Result<Self, InterfaceError> {
        let set: HashSet<Vec<Letter>> = vertices.iter().map(|v| v.reduce().letters().to_vec()).collect();
        let mut frontier = Vec::new();
        for v in &vertices {
            let v = v.reduce();
            for l in Letter::all(rank) {
                if !set.contains(&step(v.letters(), l)) {
                    frontier.push((v.clone(), l, label(&v, l)));
                }
            }
        }
        FiniteTreeColoring::new(rank, vertices, frontier)
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// Vertices in shortlex order.
    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    fn lookup(&self, v: &Word) -> Option<usize> {
        self.index.get(v.letters()).copied()
    }

    fn neighbor(&self, vi: usize, l: Letter) -> Option<usize> {
        self.index.get(&step(self.vertices[vi].letters(), l)).copied()
    }

    fn check_connected(&self) -> Result<(), InterfaceError> {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for l in Letter::all(self.rank) {
                if let Some(u) = self.neighbor(v, l) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(malformed("vertex set is not connected"))
        }
    }

    /// Colors of the ends reached by leaving vertex `vi` along `l`, as
    /// (some black, some white).
    fn direction(&self, vi: usize, l: Letter) -> (bool, bool) {
        let Some(start) = self.neighbor(vi, l) else {
            let c = self.frontier[&(vi, l)];
            return (c == Color::Black, c == Color::White);
        };
        let (mut black, mut white) = (false, false);
        let mut stack = vec![(start, vi)];
        while let Some((v, from)) = stack.pop() {
            for m in Letter::all(self.rank) {
                match self.neighbor(v, m) {
                    Some(u) if u == from => {}
                    Some(u) => stack.push((u, v)),
                    None => match self.frontier[&(v, m)] {
                        Color::Black => black = true,
                        _ => white = true,
                    },
                }
            }
        }
        (black, white)
    }

    fn mono(&self, vi: usize, l: Letter) -> Option<Color> {
        match self.direction(vi, l) {
            (true, false) => Some(Color::Black),
            (false, true) => Some(Color::White),
            _ => None,
        }
    }

    /// Whether the edge leaving `vi` along `l` is gray: both of its sides
    /// contain ends of both colors.
    pub fn is_gray(&self, v: &Word, l: Letter) -> bool {
        self.lookup(&v.reduce()).is_some_and(|vi| self.gray_at(vi, l))
    }

    fn gray_at(&self, vi: usize, l: Letter) -> bool {
        match self.neighbor(vi, l) {
            None => false,
            Some(u) => self.mono(vi, l).is_none() && self.mono(u, l.inverse()).is_none(),
        }
    }

    /// Gray edges as (vertex index, letter) with the letter's generator
    /// taken positive, so each edge appears once.
    fn gray_edges(&self) -> Vec<(usize, Letter)> {
        let mut out = Vec::new();
        for vi in 0..self.vertices.len() {
            for l in Letter::all(self.rank) {
                if let Some(u) = self.neighbor(vi, l) {
                    if vi < u && self.gray_at(vi, l) {
                        out.push((vi, l));
                    }
                }
            }
        }
        out
    }

    /// Whether every black/white crossing of `iface`, placed at `base`, is a
    /// crossing of this coloring: each non-gray direction at `base` must
    /// see only ends of its assigned color, up to one global exchange.
    pub fn is_subordinate(&self, base: &Word, iface: &DInterface) -> bool {
        let Some(vi) = self.lookup(&base.reduce()) else {
            return false;
        };
        if iface.rank() != self.rank {
            return false;
        }
        let mut straight = true;
        let mut swapped = true;
        for l in Letter::all(self.rank) {
            let want = iface.color(l);
            if want == Color::Gray {
                continue;
            }
            let got = self.mono(vi, l);
            straight &= got == Some(want);
            swapped &= got == Some(want.swapped());
        }
        straight || swapped
    }

    /// Reads off either a disc at a vertex whose directions are all
    /// monochromatic, or two half-discs at outermost vertices of the gray
    /// subgraph.
    pub fn extract_subordinate(&self) -> Result<Subordinate, InterfaceError> {
        let gray = self.gray_edges();
        if gray.is_empty() {
            return self.extract_disc();
        }
        let mut degree = vec![0usize; self.vertices.len()];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for &(v, l) in &gray {
            let u = self.neighbor(v, l).expect("interior edge");
            degree[v] += 1;
            degree[u] += 1;
            adj[v].push(u);
            adj[u].push(v);
        }
        self.check_gray_connected(&adj, gray[0].0)?;
        let leaves: Vec<usize> = (0..self.vertices.len()).filter(|&v| degree[v] == 1).collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, &v) in leaves.iter().enumerate() {
            for &w in &leaves[i + 1..] {
                let d = tree_distance(&self.vertices[v], &self.vertices[w]);
                // Leaves are in shortlex order, so the first pair found at a
                // given distance is the lexicographic tie-break winner.
                if best.is_none_or(|(bd, _, _)| d > bd) {
                    best = Some((d, v, w));
                }
            }
        }
        let (_, v, w) = best.ok_or_else(|| malformed("gray subgraph has no leaves"))?;
        Ok(Subordinate::HalfDiscs([self.half_disc_at(v)?, self.half_disc_at(w)?]))
    }

    fn check_gray_connected(&self, adj: &[Vec<usize>], start: usize) -> Result<(), InterfaceError> {
        let mut seen = vec![false; adj.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if (0..adj.len()).any(|v| !adj[v].is_empty() && !seen[v]) {
            return Err(malformed("gray edges are not connected"));
        }
        Ok(())
    }

    fn half_disc_at(&self, vi: usize) -> Result<(Word, DHalfDisc), InterfaceError> {
        let mut colors = Vec::with_capacity(2 * self.rank as usize);
        for l in Letter::all(self.rank) {
            if self.gray_at(vi, l) {
                colors.push(Color::Gray);
            } else {
                let c = self
                    .mono(vi, l)
                    .ok_or_else(|| malformed(format!("direction {l} at {} is mixed", self.vertices[vi])))?;
                colors.push(c);
            }
        }
        let v = &self.vertices[vi];
        let iface = DInterface::new(self.rank, colors).map_err(|e| match e {
            InterfaceError::EmptyBlack => malformed(format!("all frontier directions at {v} are white")),
            InterfaceError::EmptyWhite => malformed(format!("all frontier directions at {v} are black")),
            e => e,
        })?;
        Ok((v.clone(), DHalfDisc::new(iface)?))
    }

    fn extract_disc(&self) -> Result<Subordinate, InterfaceError> {
        for vi in 0..self.vertices.len() {
            let colors: Option<Vec<Color>> = Letter::all(self.rank).map(|l| self.mono(vi, l)).collect();
            let Some(colors) = colors else { continue };
            if let Ok(iface) = DInterface::new(self.rank, colors) {
                return Ok(Subordinate::Disc { base: self.vertices[vi].clone(), disc: DDisc::new(iface)? });
            }
        }
        Err(malformed("no vertex sees both colors in monochromatic directions"))
    }
}

fn step(v: &[Letter], l: Letter) -> Vec<Letter> {
    let mut out = v.to_vec();
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
    out
}

fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.letters().cmp(b.letters()))
}

fn tree_distance(a: &Word, b: &Word) -> usize {
    let common = a.letters().iter().zip(b.letters()).take_while(|(x, y)| x == y).count();
    a.len() + b.len() - 2 * common
}
