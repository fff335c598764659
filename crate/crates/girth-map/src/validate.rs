use std::collections::{BTreeMap, HashMap};
use std::fmt;

use girth_word::{Letter, Word};

use crate::map::{SlotIndex, SurfaceMap};
use crate::{Interval, MapError};

/// Summary of a valid map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub genus: u8,
    pub chi: i64,
    pub crossings: usize,
    pub boundary_components: usize,
    /// Prong count to number of single-cycle in-S faces with that count.
    pub roads: BTreeMap<usize, usize>,
    /// In-S faces with more than one boundary cycle.
    pub multi_cycle_in_s: usize,
    pub faces_in_s: usize,
    pub faces_out: usize,
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "valid genus={} chi={} crossings={} boundary_components={} faces_in_s={} faces_out={}",
            self.genus, self.chi, self.crossings, self.boundary_components, self.faces_in_s, self.faces_out
        )?;
        write!(f, " roads=")?;
        if self.roads.is_empty() {
            write!(f, "-")?;
        }
        for (i, (p, k)) in self.roads.iter().enumerate() {
            write!(f, "{}{k}x{p}", if i > 0 { "," } else { "" })?;
        }
        if self.multi_cycle_in_s > 0 {
            write!(f, " multi_cycle_in_s={}", self.multi_cycle_in_s)?;
        }
        Ok(())
    }
}

/// One component of the subsurface boundary: the slots where its arcs start,
/// in traversal order, and the word it reads crossing the discs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub slots: Vec<usize>,
    pub word: Word,
}

/// Slot and face lookups for a map whose faces passed the listing checks.
pub(crate) struct Layout {
    pub ix: SlotIndex,
    pub face_of: HashMap<Interval, usize>,
    /// Per arc, the face holding the side run from its first slot to its
    /// second, then the face holding the reverse side.
    pub arc_face: Vec<[usize; 2]>,
}

impl Layout {
    pub fn new(m: &SurfaceMap) -> Result<Layout, Vec<MapError>> {
        let ix = m.slot_index()?;
        let face_of = check_faces(m, &ix)?;
        let arc_face =
            m.arcs.iter().map(|&[s, t]| [face_of[&ending_at(m, &ix, s)], face_of[&ending_at(m, &ix, t)]]).collect();
        Ok(Layout { ix, face_of, arc_face })
    }
}

/// Checks every structural and topological invariant; returns all problems
/// found or the map's diagnostics.
pub fn validate(m: &SurfaceMap) -> Result<Diagnostics, Vec<MapError>> {
    let lay = Layout::new(m)?;
    let ix = &lay.ix;
    let mut errs = Vec::new();
    for (a, &[s, t]) in m.arcs.iter().enumerate() {
        let [f, g] = lay.arc_face[a];
        if m.faces[f].in_s == m.faces[g].in_s {
            errs.push(MapError::ArcSides(s, t));
        }
    }
    for iv in m.all_intervals().filter(|iv| iv.country % 2 == 0) {
        let other = m.glued(ix, iv);
        if m.faces[lay.face_of[&iv]].in_s != m.faces[lay.face_of[&other]].in_s {
            errs.push(MapError::GluedSides(iv.to_string(), other.to_string()));
        }
    }
    if let Err(e) = check_sphere(m, ix) {
        errs.push(e);
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    let chi = euler_char(m).map_err(|e| vec![e])?;
    let mut roads = BTreeMap::new();
    let mut multi = 0;
    for f in m.faces.iter().filter(|f| f.in_s) {
        if f.boundary.len() == 1 {
            *roads.entry(proper_count(m, &f.boundary[0])).or_insert(0) += 1;
        } else {
            multi += 1;
        }
    }
    let faces_in_s = m.faces.iter().filter(|f| f.in_s).count();
    Ok(Diagnostics {
        genus: m.genus,
        chi,
        crossings: m.crossings(),
        boundary_components: boundary_components(m).len(),
        roads,
        multi_cycle_in_s: multi,
        faces_in_s,
        faces_out: m.faces.len() - faces_in_s,
    })
}

/// The interval whose end slot is `s`.
pub(crate) fn ending_at(m: &SurfaceMap, ix: &SlotIndex, s: usize) -> Interval {
    let c = ix.country[s];
    let k = m.countries[c].len();
    Interval { country: c, index: (ix.pos[s] + k - 1) % k }
}

fn proper_count(m: &SurfaceMap, cycle: &[Interval]) -> usize {
    cycle.iter().filter(|iv| !m.countries[iv.country].is_empty()).count()
}

fn check_faces(m: &SurfaceMap, ix: &SlotIndex) -> Result<HashMap<Interval, usize>, Vec<MapError>> {
    let mut errs = Vec::new();
    let mut face_of = HashMap::new();
    for (fi, f) in m.faces.iter().enumerate() {
        if f.boundary.is_empty() {
            errs.push(MapError::Face { face: fi, reason: "no boundary cycles".into() });
        }
        for cyc in &f.boundary {
            if cyc.is_empty() {
                errs.push(MapError::Face { face: fi, reason: "empty boundary cycle".into() });
                continue;
            }
            for (k, &iv) in cyc.iter().enumerate() {
                if iv.country >= m.countries.len() || iv.index >= m.intervals_of(iv.country) {
                    errs.push(MapError::Face { face: fi, reason: format!("no interval {iv:?}") });
                    continue;
                }
                if face_of.insert(iv, fi).is_some() {
                    errs.push(MapError::IntervalRepeated(iv.to_string()));
                }
                let next = cyc[(k + 1) % cyc.len()];
                if m.successor(ix, iv) != next {
                    errs.push(MapError::Face {
                        face: fi,
                        reason: format!("{iv} is not followed by {next} along the arcs"),
                    });
                }
            }
        }
    }
    for iv in m.all_intervals() {
        if !face_of.contains_key(&iv) {
            errs.push(MapError::IntervalMissing(iv.to_string()));
        }
    }
    if errs.is_empty() {
        Ok(face_of)
    } else {
        Err(errs)
    }
}

/// Each connected piece of the country/arc graph must be a planar graph, and
/// faces must join the pieces in a tree, for the cells to form a sphere.
fn check_sphere(m: &SurfaceMap, ix: &SlotIndex) -> Result<(), MapError> {
    let nc = m.countries.len();
    let mut uf = UnionFind::new(nc);
    for &[s, t] in &m.arcs {
        uf.union(ix.country[s], ix.country[t]);
    }
    let mut comp_id = HashMap::new();
    for c in 0..nc {
        let r = uf.find(c);
        let next = comp_id.len();
        comp_id.entry(r).or_insert(next);
    }
    let ncomp = comp_id.len();
    let mut euler = vec![0i64; ncomp];
    for c in 0..nc {
        let k = comp_id[&uf.find(c)];
        let slots = m.countries[c].len() as i64;
        let vertices = slots.max(1);
        let edges = slots.max(1);
        euler[k] += vertices - edges + 1;
    }
    for &[s, _] in &m.arcs {
        euler[comp_id[&uf.find(ix.country[s])]] -= 1;
    }
    let mut incidences = 0;
    let mut fuf = UnionFind::new(m.faces.len() + ncomp);
    for (fi, f) in m.faces.iter().enumerate() {
        for cyc in &f.boundary {
            let k = comp_id[&uf.find(cyc[0].country)];
            euler[k] += 1;
            incidences += 1;
            fuf.union(fi, m.faces.len() + k);
        }
    }
    if let Some(k) = euler.iter().position(|&e| e != 2) {
        return Err(MapError::NotSphere(format!("graph piece {k} has Euler characteristic {}", euler[k])));
    }
    let roots: std::collections::HashSet<usize> = (0..m.faces.len() + ncomp).map(|i| fuf.find(i)).collect();
    if incidences + 1 != m.faces.len() + ncomp || roots.len() != 1 {
        return Err(MapError::NotSphere("faces do not join the graph pieces in a tree".into()));
    }
    Ok(())
}

/// Euler characteristic of S, computed from the in-S faces and separately
/// from the genus and the out-of-S faces; the two must agree.
pub fn euler_char(m: &SurfaceMap) -> Result<i64, MapError> {
    let twice = |in_s: bool| -> i64 {
        m.faces
            .iter()
            .filter(|f| f.in_s == in_s)
            .map(|f| {
                let proper: usize = f.boundary.iter().map(|c| proper_count(m, c)).sum();
                2 * (2 - f.boundary.len() as i64) - proper as i64
            })
            .sum()
    };
    let from_roads = twice(true);
    let from_complement = 2 * (2 - 2 * m.genus as i64) - twice(false);
    if from_roads != from_complement || from_roads % 2 != 0 {
        return Err(MapError::Inconsistent(format!(
            "Euler characteristic {from_roads}/2 from roads, {from_complement}/2 from the complement"
        )));
    }
    Ok(from_roads / 2)
}

/// Components of the subsurface boundary, in order of their least slot.
pub fn boundary_components(m: &SurfaceMap) -> Vec<BoundaryComponent> {
    let Ok(ix) = m.slot_index() else { return Vec::new() };
    let n = m.slot_count();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for s0 in 0..n {
        if used[s0] || used[ix.mate[s0]] {
            continue;
        }
        let mut slots = Vec::new();
        let mut letters = Vec::new();
        let mut s = s0;
        loop {
            used[s] = true;
            slots.push(s);
            let t = ix.mate[s];
            used[t] = true;
            letters.push(Letter::from_index(ix.country[t]));
            s = ix.partner[t];
            if s == s0 {
                break;
            }
        }
        out.push(BoundaryComponent { slots, word: Word::new(m.genus, letters).expect("in rank") });
    }
    out
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
