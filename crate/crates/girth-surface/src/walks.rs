use girth_map::DualGraph;
use girth_word::Letter;

use crate::SurfaceError;

/// A closed walk in the dual graph of the subsurface that uses each edge at
/// most once and joins its entry and exit points in every polygon by chords
/// that do not cross. Such a walk is an embedded closed curve.
#[derive(Clone, Debug)]
pub(crate) struct Walk {
    /// Dual edges in order, each with `true` when crossed from `from` to `to`.
    pub steps: Vec<(usize, bool)>,
    pub letters: Vec<Letter>,
    pub cost: usize,
}

pub(crate) enum Control {
    Continue,
    /// Only report walks costing less than this from now on.
    Below(usize),
    Stop,
}

/// Depth-first enumeration of embedded closed walks, each reported once per
/// direction, starting from its least edge.
pub(crate) struct WalkSearch<'a> {
    dual: &'a DualGraph,
    adj: Vec<Vec<(usize, bool)>>,
    cost: Vec<usize>,
    max_len: usize,
    /// Walks must cost less than this.
    below: usize,
    budget: usize,
    visited: usize,
    allowed: Vec<bool>,
}

struct Frame {
    start: usize,
    home: usize,
    depart: usize,
    used: Vec<bool>,
    chords: Vec<(usize, usize, usize)>,
    walk: Walk,
    stop: bool,
}

impl<'a> WalkSearch<'a> {
    /// `cost[e]` is the price of crossing dual edge `e`; polygons with
    /// `allowed[p] == false` are never entered.
    pub fn new(dual: &'a DualGraph, cost: Vec<usize>, allowed: Vec<bool>, max_len: usize, budget: usize) -> Self {
        let mut adj = vec![Vec::new(); dual.polygon_len.len()];
        for (e, de) in dual.edges.iter().enumerate() {
            adj[de.from.0].push((e, true));
            adj[de.to.0].push((e, false));
        }
        WalkSearch { dual, adj, cost, max_len, below: usize::MAX, budget, visited: 0, allowed }
    }

    fn ends(&self, e: usize, fwd: bool) -> ((usize, usize), (usize, usize)) {
        let de = &self.dual.edges[e];
        if fwd {
            (de.from, de.to)
        } else {
            (de.to, de.from)
        }
    }

    fn letter(&self, e: usize, fwd: bool) -> Option<Letter> {
        self.dual.edges[e].letter.map(|l| if fwd { l } else { l.inverse() })
    }

    pub fn run(&mut self, visit: &mut dyn FnMut(&Walk) -> Control) -> Result<(), SurfaceError> {
        for start in 0..self.dual.edges.len() {
            for fwd in [true, false] {
                let ((p0, d0), (p1, a1)) = self.ends(start, fwd);
                if !self.allowed[p0] || !self.allowed[p1] || self.cost[start] >= self.below {
                    continue;
                }
                let mut used = vec![false; self.dual.edges.len()];
                used[start] = true;
                let mut fr = Frame {
                    start,
                    home: p0,
                    depart: d0,
                    used,
                    chords: Vec::new(),
                    walk: Walk {
                        steps: vec![(start, fwd)],
                        letters: self.letter(start, fwd).into_iter().collect(),
                        cost: self.cost[start],
                    },
                    stop: false,
                };
                self.extend(&mut fr, p1, a1, visit)?;
                if fr.stop {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    fn extend(
        &mut self,
        fr: &mut Frame,
        poly: usize,
        arrive: usize,
        visit: &mut dyn FnMut(&Walk) -> Control,
    ) -> Result<(), SurfaceError> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(SurfaceError::BudgetExhausted { budget: self.budget });
        }
        let n = self.dual.polygon_len[poly];
        if poly == fr.home && fits(&fr.chords, poly, arrive, fr.depart, n) && fr.walk.cost < self.below {
            match visit(&fr.walk) {
                Control::Continue => {}
                Control::Below(c) => self.below = self.below.min(c),
                Control::Stop => {
                    fr.stop = true;
                    return Ok(());
                }
            }
        }
        if fr.walk.steps.len() == self.max_len {
            return Ok(());
        }
        for k in 0..self.adj[poly].len() {
            let (e, fwd) = self.adj[poly][k];
            if e <= fr.start || fr.used[e] || fr.walk.cost + self.cost[e] >= self.below {
                continue;
            }
            let ((_, dep), (next, arr)) = self.ends(e, fwd);
            if !self.allowed[next] || !fits(&fr.chords, poly, arrive, dep, n) {
                continue;
            }
            fr.used[e] = true;
            fr.chords.push((poly, arrive, dep));
            fr.walk.steps.push((e, fwd));
            let pushed = self.letter(e, fwd).map(|l| fr.walk.letters.push(l)).is_some();
            fr.walk.cost += self.cost[e];
            self.extend(fr, next, arr, visit)?;
            fr.walk.cost -= self.cost[e];
            if pushed {
                fr.walk.letters.pop();
            }
            fr.walk.steps.pop();
            fr.chords.pop();
            fr.used[e] = false;
            if fr.stop {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Whether chord `(a, b)` of polygon `poly` crosses none of the chords
/// already drawn there.
fn fits(chords: &[(usize, usize, usize)], poly: usize, a: usize, b: usize, n: usize) -> bool {
    let inside = |x: usize| (x + n - a) % n < (b + n - a) % n && x != a;
    chords.iter().filter(|&&(p, _, _)| p == poly).all(|&(_, c, d)| inside(c) == inside(d))
}

#[cfg(test)]
mod tests {
    use super::fits;

    #[test]
    fn chords_of_a_hexagon() {
        assert!(fits(&[(0, 0, 2)], 0, 3, 5, 6));
        assert!(!fits(&[(0, 0, 3)], 0, 1, 4, 6));
        assert!(fits(&[(0, 0, 3)], 0, 1, 2, 6));
        assert!(fits(&[(1, 0, 3)], 0, 1, 4, 6));
    }
}
