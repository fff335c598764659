use std::collections::BTreeMap;
use std::fmt;

use girth_word::{Letter, MAX_RANK};
use serde::{Deserialize, Serialize};

use crate::MapError;

/// A boundary interval of a country: the stretch of its circle from slot
/// `index` to the next slot in cyclic order. A country without slots has a
/// single interval covering its whole circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Interval {
    pub country: usize,
    pub index: usize,
}

impl From<[usize; 2]> for Interval {
    fn from(v: [usize; 2]) -> Self {
        Interval { country: v[0], index: v[1] }
    }
}

impl From<Interval> for [usize; 2] {
    fn from(iv: Interval) -> Self {
        [iv.country, iv.index]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.country < 2 * MAX_RANK as usize {
            write!(f, "{}#{}", country_label(self.country), self.index)
        } else {
            write!(f, "country{}#{}", self.country, self.index)
        }
    }
}

/// A region of the sphere minus countries and arcs. Each boundary cycle lists
/// the intervals met with the region on the left; consecutive intervals are
/// joined by the arc leaving the end slot of the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub in_s: bool,
    pub boundary: Vec<Vec<Interval>>,
}

/// The sphere obtained by cutting the handlebody along its disc system, with
/// the trace of the subsurface boundary drawn on it as arcs.
///
/// Country `c` is the side of the disc system named by the letter
/// `Letter::from_index(c)`: even indices are the `+` sides, odd the `-` sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceMap {
    pub genus: u8,
    /// Slot ids around each country, in the country's boundary orientation.
    pub countries: Vec<Vec<usize>>,
    /// Pairs `[slot on a + side, slot on the matching - side]`.
    pub gluing: Vec<[usize; 2]>,
    /// Arcs as slot pairs; a perfect matching of all slots.
    pub arcs: Vec<[usize; 2]>,
    pub faces: Vec<Face>,
}

pub fn country_label(c: usize) -> char {
    Letter::from_index(c).to_char()
}

pub fn partner_country(c: usize) -> usize {
    c ^ 1
}

/// Slot lookups derived from a structurally sound map.
#[derive(Clone, Debug)]
pub(crate) struct SlotIndex {
    pub country: Vec<usize>,
    pub pos: Vec<usize>,
    pub partner: Vec<usize>,
    pub mate: Vec<usize>,
}

impl SurfaceMap {
    pub fn parse(text: &str) -> Result<SurfaceMap, MapError> {
        let m: SurfaceMap = serde_json::from_str(text).map_err(|e| MapError::Json(e.to_string()))?;
        m.slot_index().map_err(|mut errs| errs.remove(0))?;
        Ok(m)
    }

    /// Pretty JSON of the canonical form, newline terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.canonical()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn slot_count(&self) -> usize {
        self.countries.iter().map(Vec::len).sum()
    }

    /// Number of points where the disc system meets the subsurface boundary.
    pub fn crossings(&self) -> usize {
        self.slot_count() / 2
    }

    pub fn intervals_of(&self, c: usize) -> usize {
        self.countries[c].len().max(1)
    }

    pub fn all_intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        (0..self.countries.len())
            .flat_map(move |c| (0..self.intervals_of(c)).map(move |index| Interval { country: c, index }))
    }

    /// Slot at which `iv` starts, if the country has slots.
    pub fn start_slot(&self, iv: Interval) -> Option<usize> {
        self.countries[iv.country].get(iv.index).copied()
    }

    pub fn end_slot(&self, iv: Interval) -> Option<usize> {
        let slots = &self.countries[iv.country];
        if slots.is_empty() {
            None
        } else {
            Some(slots[(iv.index + 1) % slots.len()])
        }
    }

    /// Checks slot ids, gluing and arcs, returning lookups or every problem
    /// found.
    pub(crate) fn slot_index(&self) -> Result<SlotIndex, Vec<MapError>> {
        let mut errs = Vec::new();
        let g = self.genus as usize;
        if g == 0 || g > girth_word::MAX_RANK as usize {
            return Err(vec![MapError::Genus(self.genus)]);
        }
        if self.countries.len() != 2 * g {
            return Err(vec![MapError::CountryCount { genus: self.genus, found: self.countries.len() }]);
        }
        let n = self.slot_count();
        let mut country = vec![usize::MAX; n];
        let mut pos = vec![0; n];
        for (c, slots) in self.countries.iter().enumerate() {
            for (k, &s) in slots.iter().enumerate() {
                if s >= n {
                    errs.push(MapError::SlotId { slot: s, count: n });
                } else if country[s] != usize::MAX {
                    errs.push(MapError::DuplicateSlot(s));
                } else {
                    country[s] = c;
                    pos[s] = k;
                }
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        for i in 0..g {
            let (p, q) = (self.countries[2 * i].len(), self.countries[2 * i + 1].len());
            if p != q {
                errs.push(MapError::UnequalSlots { generator: i + 1, plus: p, minus: q });
            }
        }
        let mut partner = vec![usize::MAX; n];
        for &[s, t] in &self.gluing {
            if s >= n || t >= n {
                errs.push(MapError::SlotId { slot: s.max(t), count: n });
                continue;
            }
            if country[s] % 2 != 0 || country[t] != country[s] + 1 {
                errs.push(MapError::GluingSides { plus: s, minus: t });
                continue;
            }
            if partner[s] != usize::MAX || partner[t] != usize::MAX {
                errs.push(MapError::GluingRepeated(if partner[s] != usize::MAX { s } else { t }));
                continue;
            }
            partner[s] = t;
            partner[t] = s;
        }
        if let Some(s) = (0..n).find(|&s| partner[s] == usize::MAX) {
            errs.push(MapError::Unglued(s));
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        for i in 0..g {
            let plus = &self.countries[2 * i];
            let m = plus.len();
            for k in 0..m {
                let a = pos[partner[plus[k]]];
                let b = pos[partner[plus[(k + 1) % m]]];
                if (b + 1) % m != a {
                    errs.push(MapError::GluingOrder { generator: i + 1, slot: plus[k] });
                    break;
                }
            }
        }
        let mut mate = vec![usize::MAX; n];
        for &[s, t] in &self.arcs {
            if s >= n || t >= n {
                errs.push(MapError::SlotId { slot: s.max(t), count: n });
            } else if s == t || mate[s] != usize::MAX || mate[t] != usize::MAX {
                errs.push(MapError::ArcRepeated(if mate[s] != usize::MAX || s == t { s } else { t }));
            } else {
                mate[s] = t;
                mate[t] = s;
            }
        }
        if let Some(s) = (0..n).find(|&s| mate[s] == usize::MAX) {
            errs.push(MapError::ArcMissing(s));
        }
        if errs.is_empty() {
            Ok(SlotIndex { country, pos, partner, mate })
        } else {
            Err(errs)
        }
    }

    /// The interval glued to `iv` across its disc.
    pub(crate) fn glued(&self, ix: &SlotIndex, iv: Interval) -> Interval {
        let other = partner_country(iv.country);
        match self.end_slot(iv) {
            None => Interval { country: other, index: 0 },
            Some(end) => Interval { country: other, index: ix.pos[ix.partner[end]] },
        }
    }

    /// The interval that follows `iv` on its face boundary; a slotless
    /// country's interval is its own successor.
    pub(crate) fn successor(&self, ix: &SlotIndex, iv: Interval) -> Interval {
        match self.end_slot(iv) {
            None => iv,
            Some(end) => {
                let u = ix.mate[end];
                Interval { country: ix.country[u], index: ix.pos[u] }
            }
        }
    }

    /// Face boundary cycles determined by the arcs, each starting at its
    /// least interval, sorted.
    pub(crate) fn traced_cycles(&self, ix: &SlotIndex) -> Vec<Vec<Interval>> {
        let mut seen = BTreeMap::new();
        let mut cycles = Vec::new();
        for iv in self.all_intervals() {
            if seen.contains_key(&iv) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = iv;
            loop {
                seen.insert(cur, cycles.len());
                cyc.push(cur);
                cur = self.successor(ix, cur);
                if cur == iv {
                    break;
                }
            }
            cycles.push(cyc);
        }
        cycles
    }

    /// Renumbers slots by first appearance, orders gluing pairs and arcs, and
    /// rotates and sorts face cycles so equal maps print identically.
    pub fn canonical(&self) -> SurfaceMap {
        let n = self.slot_count();
        let mut renum = vec![usize::MAX; n.max(self.max_slot_id() + 1)];
        let mut next = 0;
        for slots in &self.countries {
            for &s in slots {
                renum[s] = next;
                next += 1;
            }
        }
        let countries: Vec<Vec<usize>> =
            self.countries.iter().map(|sl| sl.iter().map(|&s| renum[s]).collect()).collect();
        let mut gluing: Vec<[usize; 2]> = self.gluing.iter().map(|&[s, t]| [renum[s], renum[t]]).collect();
        gluing.sort_unstable();
        let mut arcs: Vec<[usize; 2]> = self
            .arcs
            .iter()
            .map(|&[s, t]| {
                let (a, b) = (renum[s], renum[t]);
                [a.min(b), a.max(b)]
            })
            .collect();
        arcs.sort_unstable();
        let mut faces: Vec<Face> = self
            .faces
            .iter()
            .map(|f| {
                let mut boundary: Vec<Vec<Interval>> = f.boundary.iter().map(|c| rotate_to_min(c)).collect();
                boundary.sort();
                Face { in_s: f.in_s, boundary }
            })
            .collect();
        faces.sort_by(|a, b| (&a.boundary, a.in_s).cmp(&(&b.boundary, b.in_s)));
        SurfaceMap { genus: self.genus, countries, gluing, arcs, faces }
    }

    /// Rebuilds faces from the arcs: cycles whose intervals share a key from
    /// `key` form one face with the key's membership flag. Slot ids may have
    /// gaps; the result is canonical. Fails if a cycle mixes keys.
    pub fn with_retraced_faces(&self, key: impl Fn(Interval) -> (usize, bool)) -> Result<SurfaceMap, MapError> {
        let ix = self.slot_index_sparse()?;
        let mut order: Vec<usize> = Vec::new();
        let mut groups: BTreeMap<usize, Face> = BTreeMap::new();
        for cyc in self.traced_cycles(&ix) {
            let (k, in_s) = key(cyc[0]);
            if let Some(&bad) = cyc.iter().find(|&&iv| key(iv) != (k, in_s)) {
                return Err(MapError::Inconsistent(format!(
                    "boundary cycle through {} and {bad} spans two faces",
                    cyc[0]
                )));
            }
            let face = groups.entry(k).or_insert_with(|| {
                order.push(k);
                Face { in_s, boundary: Vec::new() }
            });
            face.boundary.push(cyc);
        }
        let faces = order.into_iter().map(|k| groups.remove(&k).expect("present")).collect();
        let m = SurfaceMap { faces, ..self.clone() };
        Ok(m.canonical())
    }

    /// Like `slot_index` but for maps whose slot ids are not contiguous.
    fn slot_index_sparse(&self) -> Result<SlotIndex, MapError> {
        let c = SurfaceMap { faces: Vec::new(), ..self.clone() }.canonical();
        let ix = c.slot_index().map_err(|mut e| e.remove(0))?;
        let n = self.max_slot_id() + 1;
        let mut old_of = vec![usize::MAX; c.slot_count()];
        for (a, b) in self.countries.iter().flatten().zip(c.countries.iter().flatten()) {
            old_of[*b] = *a;
        }
        let mut out = SlotIndex {
            country: vec![usize::MAX; n],
            pos: vec![0; n],
            partner: vec![usize::MAX; n],
            mate: vec![usize::MAX; n],
        };
        for s in 0..c.slot_count() {
            let o = old_of[s];
            out.country[o] = ix.country[s];
            out.pos[o] = ix.pos[s];
            out.partner[o] = old_of[ix.partner[s]];
            out.mate[o] = old_of[ix.mate[s]];
        }
        Ok(out)
    }

    fn max_slot_id(&self) -> usize {
        self.countries.iter().flatten().copied().max().unwrap_or(0)
    }
}

pub(crate) fn rotate_to_min(c: &[Interval]) -> Vec<Interval> {
    match c.iter().enumerate().min_by_key(|(_, iv)| **iv) {
        None => Vec::new(),
        Some((k, _)) => c[k..].iter().chain(&c[..k]).copied().collect(),
    }
}
