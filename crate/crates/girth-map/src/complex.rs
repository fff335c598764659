use std::collections::{HashMap, VecDeque};
use std::fmt;

use girth_word::Letter;

use crate::map::SurfaceMap;
use crate::validate::{Layout, UnionFind};
use crate::{validate, Face, Interval, MapError};

/// Kind of an edge of the handlebody boundary cell structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// A piece of the subsurface boundary, tagged with the arc it came from.
    Gamma(usize),
    /// A chord added to make a face a disc, or a retired disc boundary.
    Virtual,
    /// A piece of a disc boundary for the given generator (1-based). The even
    /// dart runs in the disc's direction with the `+` side on its left.
    Meridian(u8),
}

/// An arc from a country back to the same country through the complement of
/// the countries: starts on interval `from`, crosses `arcs` in order through
/// `faces`, and ends on interval `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfDiscPath {
    pub country: usize,
    pub from: usize,
    pub to: usize,
    pub faces: Vec<usize>,
    pub arcs: Vec<usize>,
}

impl HalfDiscPath {
    pub fn crossings(&self) -> usize {
        self.arcs.len()
    }
}

impl fmt::Display for HalfDiscPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}", crate::country_label(self.country), self.from)?;
        for (k, face) in self.faces.iter().enumerate() {
            write!(f, ".f{face}")?;
            if let Some(a) = self.arcs.get(k) {
                write!(f, ".a{a}")?;
            }
        }
        write!(f, "]{}", self.to)
    }
}

/// A simple closed curve in the sphere minus countries. `crossings[j]` is an
/// arc crossing, with `position` in quarters along the arc from its first
/// slot (1 near it, 2 in the middle, 3 near the second slot); `faces[j]` is
/// the face entered after crossing `j - 1`. A curve with no crossings lies in
/// `faces[0]` and runs around boundary cycle `encircles` of that face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscCurve {
    pub faces: Vec<usize>,
    pub crossings: Vec<(usize, u8)>,
    pub encircles: Option<usize>,
}

impl DiscCurve {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }
}

impl fmt::Display for DiscCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, face) in self.faces.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "f{face}")?;
            if let Some((a, _)) = self.crossings.get(k) {
                write!(f, ".a{a}")?;
            }
        }
        if let Some(c) = self.encircles {
            write!(f, "@{c}")?;
        }
        Ok(())
    }
}

/// A crossing of an edge by a curve being drawn: the curve passes from the
/// polygon left of `dart` to the one on its right, at parameter `t` (in
/// `1..T_SCALE`) measured from the dart's origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Crossing {
    pub dart: usize,
    pub t: u32,
}

/// An edge of [`DualGraph`]: crossing it from `from` to `to` reads `letter`
/// (`None` for an auxiliary chord), and the reverse crossing reads its
/// inverse. Each end is a polygon and the dart position along its cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub letter: Option<Letter>,
    /// The edge of the complex this crosses.
    pub edge: usize,
}

/// Polygons of the subsurface as vertices, with their boundary lengths, and
/// the edges shared between them. `interior_vertices` lists, per vertex of
/// the cell structure not on the subsurface boundary, one polygon around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub polygon_len: Vec<usize>,
    /// Whether each polygon has a side on the subsurface boundary.
    pub on_boundary: Vec<bool>,
    pub edges: Vec<DualEdge>,
    pub interior_vertices: Vec<usize>,
}

pub(crate) const T_SCALE: u32 = 8;

/// Half-edge structure of the handlebody boundary with the disc boundaries,
/// the subsurface boundary and auxiliary chords as edges. Edge `e` owns darts
/// `2e` and `2e + 1`; every polygon lies on the left of its darts.
#[derive(Clone, Debug)]
pub struct Complex {
    genus: u8,
    kind: Vec<EdgeKind>,
    origin: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    in_s: Vec<bool>,
    vertices: usize,
}

fn twin(d: usize) -> usize {
    d ^ 1
}

impl Complex {
    /// Builds the cell structure of a valid map. The returned table gives,
    /// per interval, the disc dart with that interval's face on its left.
    pub fn from_map(m: &SurfaceMap) -> Result<(Complex, HashMap<Interval, usize>), MapError> {
        validate(m).map_err(|mut e| e.remove(0))?;
        let lay = Layout::new(m).map_err(|mut e| e.remove(0))?;
        let ix = &lay.ix;
        let mut cx = Complex {
            genus: m.genus,
            kind: Vec::new(),
            origin: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            in_s: Vec::new(),
            vertices: 0,
        };
        let mut vertex_of_slot = vec![usize::MAX; m.slot_count()];
        let mut dummy = vec![usize::MAX; m.genus as usize];
        for c in (0..m.countries.len()).step_by(2) {
            if m.countries[c].is_empty() {
                dummy[c / 2] = cx.new_vertex();
            }
            for &s in &m.countries[c] {
                let v = cx.new_vertex();
                vertex_of_slot[s] = v;
                vertex_of_slot[ix.partner[s]] = v;
            }
        }
        let mut dart_of = HashMap::new();
        for c in (0..m.countries.len()).step_by(2) {
            for k in 0..m.intervals_of(c) {
                let iv = Interval { country: c, index: k };
                let (a, b) = match (m.start_slot(iv), m.end_slot(iv)) {
                    (Some(s), Some(t)) => (vertex_of_slot[s], vertex_of_slot[t]),
                    _ => (dummy[c / 2], dummy[c / 2]),
                };
                let e = cx.new_edge(EdgeKind::Meridian((c / 2 + 1) as u8), a, b);
                dart_of.insert(iv, 2 * e);
                dart_of.insert(m.glued(ix, iv), 2 * e + 1);
            }
        }
        let mut leaving = vec![usize::MAX; m.slot_count()];
        for (a, &[s, t]) in m.arcs.iter().enumerate() {
            let e = cx.new_edge(EdgeKind::Gamma(a), vertex_of_slot[s], vertex_of_slot[t]);
            leaving[s] = 2 * e;
            leaving[t] = 2 * e + 1;
        }
        for f in &m.faces {
            for cyc in &f.boundary {
                for (k, &iv) in cyc.iter().enumerate() {
                    let d = dart_of[&iv];
                    cx.in_s[d] = f.in_s;
                    match m.end_slot(iv) {
                        None => cx.link(d, d),
                        Some(end) => {
                            let g = leaving[end];
                            cx.in_s[g] = f.in_s;
                            cx.link(d, g);
                            cx.link(g, dart_of[&cyc[(k + 1) % cyc.len()]]);
                        }
                    }
                }
            }
            for cyc in f.boundary.iter().skip(1) {
                let a = dart_of[&f.boundary[0][0]];
                let x = cx.origin[a];
                let darts = cx.cycle_from(dart_of[&cyc[0]]);
                let b = darts.iter().copied().find(|&d| cx.origin[d] != x).unwrap_or(darts[0]);
                cx.insert_chord(a, b, EdgeKind::Virtual);
            }
        }
        Ok((cx, dart_of))
    }

    pub fn genus(&self) -> u8 {
        self.genus
    }

    pub fn edge_count(&self) -> usize {
        self.kind.len()
    }

    pub fn kind(&self, e: usize) -> EdgeKind {
        self.kind[e]
    }

    pub(crate) fn head(&self, d: usize) -> usize {
        self.origin[twin(d)]
    }

    /// The next dart leaving the same vertex, turning from `d`'s left polygon
    /// to its right one.
    pub(crate) fn rot(&self, d: usize) -> usize {
        self.next[twin(d)]
    }

    pub(crate) fn set_kind(&mut self, e: usize, kind: EdgeKind) {
        self.kind[e] = kind;
    }

    /// The polygons inside the subsurface and the non-boundary edges between
    /// them. A closed walk in this graph is a closed curve in the subsurface,
    /// and every closed curve there is homotopic to one.
    pub fn dual_of_s(&self) -> DualGraph {
        let (poly, count) = self.polygons();
        let mut id = vec![usize::MAX; count];
        let mut polygon_len = Vec::new();
        let mut on_boundary = Vec::new();
        let mut pos = vec![0; self.next.len()];
        for d in 0..self.next.len() {
            if !self.in_s[d] || id[poly[d]] != usize::MAX {
                continue;
            }
            id[poly[d]] = polygon_len.len();
            let cyc = self.cycle_from(d);
            for (k, &x) in cyc.iter().enumerate() {
                pos[x] = k;
            }
            polygon_len.push(cyc.len());
            on_boundary.push(cyc.iter().any(|&x| self.is_gamma(x)));
        }
        let mut edges = Vec::new();
        for (e, &kind) in self.kind.iter().enumerate() {
            let (d, t) = (2 * e, 2 * e + 1);
            if !self.in_s[d] || !self.in_s[t] {
                continue;
            }
            let letter = match kind {
                EdgeKind::Gamma(_) => continue,
                EdgeKind::Virtual => None,
                EdgeKind::Meridian(g) => Some(Letter::from_index(2 * (g as usize - 1))),
            };
            edges.push(DualEdge { from: (id[poly[d]], pos[d]), to: (id[poly[t]], pos[t]), letter, edge: e });
        }
        let mut interior_vertices = Vec::new();
        let mut seen = vec![false; self.vertices];
        for d in 0..self.next.len() {
            let v = self.origin[d];
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let mut fan = vec![d];
            let mut cur = self.rot(d);
            while cur != d {
                fan.push(cur);
                cur = self.rot(cur);
            }
            if fan.iter().all(|&x| self.in_s[x] && !self.is_gamma(x)) {
                interior_vertices.push(id[poly[d]]);
            }
        }
        DualGraph { polygon_len, on_boundary, edges, interior_vertices }
    }

    /// Draws a curve of the map's sphere into a complex built from `m` whose
    /// faces are all polygons, and returns the edges of the drawn curve.
    pub fn draw_disc_curve(
        &mut self,
        m: &SurfaceMap,
        dart_of: &HashMap<Interval, usize>,
        k: &DiscCurve,
    ) -> Result<Vec<usize>, MapError> {
        if let Some(f) = m.faces.iter().position(|f| f.boundary.len() > 1) {
            return Err(MapError::Inconsistent(format!("face {f} is not a polygon")));
        }
        let (poly, _) = self.polygons();
        let poly_of_face: Vec<usize> = m.faces.iter().map(|f| poly[dart_of[&f.boundary[0][0]]]).collect();
        let n = k.crossings.len();
        let mut crossings = Vec::with_capacity(n);
        for (j, &(a, q)) in k.crossings.iter().enumerate() {
            let e = (0..self.kind.len())
                .find(|&e| self.kind[e] == EdgeKind::Gamma(a))
                .ok_or_else(|| MapError::Inconsistent(format!("no arc {a}")))?;
            let before = poly_of_face[k.faces[j]];
            let (dart, t) = if poly[2 * e] == before {
                (2 * e, q as u32 * T_SCALE / 4)
            } else if poly[2 * e + 1] == before {
                (2 * e + 1, T_SCALE - q as u32 * T_SCALE / 4)
            } else {
                return Err(MapError::Inconsistent(format!("arc {a} does not border face {}", k.faces[j])));
            };
            crossings.push(Crossing { dart, t });
        }
        let chords = self.draw_curve(&crossings, EdgeKind::Virtual)?;
        Ok(chords.into_iter().map(|d| d / 2).collect())
    }

    /// Whether the closed curve crossing the listed edges in order, each at
    /// its midpoint and from the left of its even dart when the flag is set,
    /// bounds a disc in the subsurface. The curve must run inside the
    /// subsurface and cross each edge at most once.
    pub fn bounds_disc_in_s(&self, route: &[(usize, bool)]) -> Result<bool, MapError> {
        let crossings: Vec<Crossing> = route
            .iter()
            .map(|&(e, fwd)| Crossing { dart: if fwd { 2 * e } else { 2 * e + 1 }, t: T_SCALE / 2 })
            .collect();
        let mut work = self.clone();
        let first_new = work.kind.len();
        let chords = work.draw_curve(&crossings, EdgeKind::Virtual)?;
        let on_curve: std::collections::HashSet<usize> = chords.iter().map(|d| d / 2).collect();
        let wall = |e: usize| matches!(work.kind[e], EdgeKind::Gamma(_)) || (e >= first_new && on_curve.contains(&e));
        let (poly, count) = work.polygons();
        let mut uf = UnionFind::new(count);
        for e in (0..work.kind.len()).filter(|&e| !wall(e)) {
            uf.union(poly[2 * e], poly[2 * e + 1]);
        }
        let chi_of = |uf: &mut UnionFind, root: usize| -> i64 {
            let faces = (0..count).filter(|&p| uf.find(p) == root).count() as i64;
            let edges = (0..work.kind.len()).filter(|&e| !wall(e) && uf.find(poly[2 * e]) == root).count() as i64;
            let mut seen = vec![false; work.vertices];
            let mut vertices = 0;
            for d in 0..work.next.len() {
                let v = work.origin[d];
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                let mut fan = vec![d];
                let mut cur = work.rot(d);
                while cur != d {
                    fan.push(cur);
                    cur = work.rot(cur);
                }
                if fan.iter().all(|&x| !wall(x / 2) && uf.find(poly[x]) == root) {
                    vertices += 1;
                }
            }
            faces - edges + vertices
        };
        let c = chords[0];
        let sides = [uf.find(poly[c]), uf.find(poly[twin(c)])];
        Ok(chi_of(&mut uf, sides[0]) == 1 || chi_of(&mut uf, sides[1]) == 1)
    }

    /// Countries whose boundary touches a polygon marked in `reached`.
    pub(crate) fn countries_touching(&self, reached: &[bool]) -> Vec<usize> {
        let (poly, _) = self.polygons();
        let mut out: Vec<usize> = (0..self.next.len())
            .filter(|&d| reached[poly[d]])
            .filter_map(|d| match self.kind[d / 2] {
                EdgeKind::Meridian(g) => Some(2 * (g as usize - 1) + d % 2),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn new_vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    fn new_edge(&mut self, kind: EdgeKind, from: usize, to: usize) -> usize {
        let e = self.kind.len();
        self.kind.push(kind);
        self.origin.extend([from, to]);
        self.next.extend([2 * e, 2 * e + 1]);
        self.prev.extend([2 * e, 2 * e + 1]);
        self.in_s.extend([false, false]);
        e
    }

    fn link(&mut self, a: usize, b: usize) {
        self.next[a] = b;
        self.prev[b] = a;
    }

    pub(crate) fn cycle_from(&self, d: usize) -> Vec<usize> {
        let mut out = vec![d];
        let mut cur = self.next[d];
        while cur != d {
            out.push(cur);
            cur = self.next[cur];
        }
        out
    }

    /// Adds an edge from `origin(a)` to `origin(b)` through the polygon
    /// holding both darts; returns the new dart running from `a`'s corner.
    pub(crate) fn insert_chord(&mut self, a: usize, b: usize, kind: EdgeKind) -> usize {
        let (pa, pb) = (self.prev[a], self.prev[b]);
        let e = self.new_edge(kind, self.origin[a], self.origin[b]);
        let (u, w) = (2 * e, 2 * e + 1);
        let side = self.in_s[a];
        self.in_s[u] = side;
        self.in_s[w] = side;
        self.link(pa, u);
        self.link(u, b);
        self.link(pb, w);
        self.link(w, a);
        u
    }

    /// Splits edge `e` at a new vertex; returns the new edge, which takes the
    /// part from the new vertex to the old head.
    fn split_edge(&mut self, e: usize) -> usize {
        let x = self.new_vertex();
        let (d, dt) = (2 * e, 2 * e + 1);
        let h = self.origin[dt];
        let f = self.new_edge(self.kind[e], x, h);
        let (g, gt) = (2 * f, 2 * f + 1);
        self.in_s[g] = self.in_s[d];
        self.in_s[gt] = self.in_s[dt];
        let after = self.next[d];
        let before = self.prev[dt];
        if after == dt {
            self.link(g, gt);
        } else {
            self.link(g, after);
            self.link(before, gt);
        }
        self.link(d, g);
        self.link(gt, dt);
        self.origin[dt] = x;
        f
    }

    /// Polygon id per dart and the polygon count.
    pub(crate) fn polygons(&self) -> (Vec<usize>, usize) {
        let mut poly = vec![usize::MAX; self.next.len()];
        let mut count = 0;
        for d in 0..self.next.len() {
            if poly[d] != usize::MAX {
                continue;
            }
            let mut cur = d;
            loop {
                poly[cur] = count;
                cur = self.next[cur];
                if cur == d {
                    break;
                }
            }
            count += 1;
        }
        (poly, count)
    }

    /// Draws a closed curve given by its edge crossings in order, joining
    /// consecutive crossings by chords of `kind`. Returns the chord darts in
    /// traversal order.
    pub(crate) fn draw_curve(&mut self, crossings: &[Crossing], kind: EdgeKind) -> Result<Vec<usize>, MapError> {
        let n = crossings.len();
        if n == 0 {
            return Err(MapError::Inconsistent("cannot draw a curve with no crossings".into()));
        }
        let (poly, _) = self.polygons();
        for j in 0..n {
            let (a, b) = (crossings[j].dart, crossings[(j + 1) % n].dart);
            if poly[twin(a)] != poly[b] {
                return Err(MapError::Inconsistent(format!(
                    "curve leaves polygon between crossings {j} and {}",
                    j + 1
                )));
            }
        }
        let mut by_edge: HashMap<usize, Vec<(u32, usize)>> = HashMap::new();
        for (j, c) in crossings.iter().enumerate() {
            let t = if c.dart % 2 == 0 { c.t } else { T_SCALE - c.t };
            by_edge.entry(c.dart / 2).or_default().push((t, j));
        }
        // Per crossing: dart leaving the new vertex toward the even dart's
        // head, and the one leaving it toward the even dart's origin.
        let mut toward = vec![(0usize, 0usize); n];
        let mut edges: Vec<usize> = by_edge.keys().copied().collect();
        edges.sort_unstable();
        for e in edges {
            let mut pts = by_edge.remove(&e).expect("present");
            pts.sort_unstable();
            if pts.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(MapError::Inconsistent(format!("two crossings at one point of edge {e}")));
            }
            let mut piece = e;
            for &(_, j) in &pts {
                let f = self.split_edge(piece);
                toward[j] = (2 * f, 2 * piece + 1);
                piece = f;
            }
        }
        let side = |j: usize, to_head_of_crossed: bool| -> usize {
            let (fwd, bwd) = toward[j];
            let even = crossings[j].dart.is_multiple_of(2);
            if even == to_head_of_crossed {
                fwd
            } else {
                bwd
            }
        };
        let mut chords = Vec::with_capacity(n);
        for j in 0..n {
            let k = (j + 1) % n;
            let a = side(j, false);
            let b = side(k, true);
            if !self.cycle_from(a).contains(&b) {
                return Err(MapError::Inconsistent(format!("curve crosses itself after crossing {j}")));
            }
            chords.push(self.insert_chord(a, b, kind));
        }
        Ok(chords)
    }

    /// Whether the surface cut along all disc edges stays connected.
    pub(crate) fn cut_is_connected(&self) -> bool {
        let (poly, count) = self.polygons();
        let mut uf = UnionFind::new(count);
        for e in 0..self.kind.len() {
            if !matches!(self.kind[e], EdgeKind::Meridian(_)) {
                uf.union(poly[2 * e], poly[2 * e + 1]);
            }
        }
        let r = uf.find(0);
        (0..count).all(|p| uf.find(p) == r)
    }

    /// Polygons reachable from `start` without crossing disc edges or the
    /// given edges.
    pub(crate) fn flood(&self, start: usize, barrier: &dyn Fn(usize) -> bool) -> Vec<bool> {
        let (poly, count) = self.polygons();
        let mut adj = vec![Vec::new(); count];
        for e in 0..self.kind.len() {
            if !matches!(self.kind[e], EdgeKind::Meridian(_)) && !barrier(e) {
                adj[poly[2 * e]].push(poly[2 * e + 1]);
                adj[poly[2 * e + 1]].push(poly[2 * e]);
            }
        }
        let mut seen = vec![false; count];
        let mut queue = VecDeque::from([poly[start]]);
        seen[poly[start]] = true;
        while let Some(p) = queue.pop_front() {
            for &q in &adj[p] {
                if !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
        seen
    }

    /// Darts of generator `gen`'s disc boundary that run in its direction,
    /// in order around the disc.
    pub(crate) fn meridian_cycle(&self, gen: u8) -> Result<Vec<usize>, MapError> {
        let mut out_of: HashMap<usize, usize> = HashMap::new();
        let mut first = None;
        for e in 0..self.kind.len() {
            if self.kind[e] == EdgeKind::Meridian(gen) {
                if out_of.insert(self.origin[2 * e], 2 * e).is_some() {
                    return Err(MapError::Inconsistent(format!("disc {gen} boundary branches")));
                }
                first.get_or_insert(2 * e);
            }
        }
        let first = first.ok_or_else(|| MapError::Inconsistent(format!("disc {gen} has no boundary")))?;
        let mut cyc = vec![first];
        let mut cur = first;
        loop {
            cur = *out_of
                .get(&self.head(cur))
                .ok_or_else(|| MapError::Inconsistent(format!("disc {gen} boundary does not close")))?;
            if cur == first {
                break;
            }
            cyc.push(cur);
        }
        if cyc.len() != out_of.len() {
            return Err(MapError::Inconsistent(format!("disc {gen} boundary is not one circle")));
        }
        Ok(cyc)
    }

    /// Darts leaving `origin(fwd)` strictly between the incoming disc dart's
    /// twin `bwd` and `fwd`, i.e. on the `+` side, in rotation order from the
    /// `bwd` side.
    pub(crate) fn fan(&self, bwd: usize, fwd: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut d = self.rot(bwd);
        while d != fwd {
            out.push(d);
            d = self.rot(d);
        }
        out
    }

    /// Exports the map obtained by cutting along the disc edges; virtual
    /// edges disappear and gamma edges through non-disc vertices merge.
    pub fn to_map(&self) -> Result<SurfaceMap, MapError> {
        let g = self.genus as usize;
        let mut countries = vec![Vec::new(); 2 * g];
        let mut gluing = Vec::new();
        // (vertex, on plus side) -> slot id
        let mut slot_at: HashMap<(usize, bool), usize> = HashMap::new();
        let mut slot_dart: Vec<usize> = Vec::new();
        let mut on_disc = HashMap::new();
        // per disc dart: interval index of the plus side (even darts) or the
        // minus side (odd darts)
        let mut interval_of: HashMap<usize, Interval> = HashMap::new();
        let mut next_slot = 0;
        for i in 1..=self.genus {
            let cyc = self.meridian_cycle(i)?;
            let len = cyc.len();
            let mut slot_vertices = Vec::new();
            for k in 0..len {
                let fwd = cyc[k];
                let bwd = twin(cyc[(k + len - 1) % len]);
                let v = self.origin[fwd];
                on_disc.insert(v, i);
                let plus: Vec<usize> = self.fan(bwd, fwd).into_iter().filter(|&d| self.is_gamma(d)).collect();
                let minus: Vec<usize> = self.fan(fwd, bwd).into_iter().filter(|&d| self.is_gamma(d)).collect();
                match (plus.len(), minus.len()) {
                    (0, 0) => {}
                    (1, 1) => slot_vertices.push((k, plus[0], minus[0])),
                    _ => return Err(MapError::Inconsistent(format!("boundary meets disc {i} without crossing it"))),
                }
            }
            let (cp, cm) = (2 * (i as usize - 1), 2 * (i as usize - 1) + 1);
            let m = slot_vertices.len();
            for &(k, pd, _) in &slot_vertices {
                slot_at.insert((self.origin[cyc[k]], true), next_slot);
                slot_dart.push(pd);
                countries[cp].push(next_slot);
                next_slot += 1;
            }
            for &(k, _, md) in slot_vertices.iter().rev() {
                let v = self.origin[cyc[k]];
                slot_at.insert((v, false), next_slot);
                slot_dart.push(md);
                countries[cm].push(next_slot);
                gluing.push([slot_at[&(v, true)], next_slot]);
                next_slot += 1;
            }
            for (k, &e) in cyc.iter().enumerate() {
                // plus interval: last slot vertex at or before k; minus
                // interval: first slot vertex after k, indexed in reverse
                let (plus_ix, minus_ix) = if m == 0 {
                    (0, 0)
                } else {
                    let last = slot_vertices.iter().rposition(|&(sk, _, _)| sk <= k).unwrap_or(m - 1);
                    let first_after = slot_vertices.iter().position(|&(sk, _, _)| sk > k).unwrap_or(0);
                    (last, m - 1 - first_after)
                };
                interval_of.insert(e, Interval { country: cp, index: plus_ix });
                interval_of.insert(twin(e), Interval { country: cm, index: minus_ix });
            }
        }
        let mut arcs = Vec::new();
        let mut gamma_seen = vec![false; self.kind.len()];
        for s in 0..slot_dart.len() {
            let mut cur = slot_dart[s];
            loop {
                gamma_seen[cur / 2] = true;
                let w = self.head(cur);
                if on_disc.contains_key(&w) {
                    let back = twin(cur);
                    let plus = slot_at.get(&(w, true)).filter(|&&t| slot_dart[t] == back);
                    let t = match plus {
                        Some(&t) => t,
                        None => *slot_at
                            .get(&(w, false))
                            .filter(|&&t| slot_dart[t] == back)
                            .ok_or_else(|| MapError::Inconsistent("arc ends off a slot".into()))?,
                    };
                    if s < t {
                        arcs.push([s, t]);
                    }
                    break;
                }
                let outs: Vec<usize> =
                    self.darts_at(w).into_iter().filter(|&d| self.is_gamma(d) && d != twin(cur)).collect();
                if outs.len() != 1 {
                    return Err(MapError::Inconsistent(format!("subsurface boundary branches at vertex {w}")));
                }
                cur = outs[0];
            }
        }
        if let Some(e) = (0..self.kind.len()).find(|&e| self.is_gamma(2 * e) && !gamma_seen[e]) {
            return Err(MapError::DetachedBoundary { essential: self.separates_countries(e)? });
        }
        let faces = self.export_faces(&interval_of)?;
        let m = SurfaceMap { genus: self.genus, countries, gluing, arcs, faces }.canonical();
        validate(&m).map_err(|mut e| e.remove(0))?;
        Ok(m)
    }

    /// Whether the closed boundary component through gamma edge `e`, which
    /// meets no disc, has countries on both sides.
    fn separates_countries(&self, e: usize) -> Result<bool, MapError> {
        let mut cycle = vec![e];
        let mut cur = 2 * e;
        loop {
            let w = self.head(cur);
            let outs: Vec<usize> =
                self.darts_at(w).into_iter().filter(|&d| self.is_gamma(d) && d != twin(cur)).collect();
            if outs.len() != 1 {
                return Err(MapError::Inconsistent(format!("subsurface boundary branches at vertex {w}")));
            }
            cur = outs[0];
            if cur / 2 == e {
                break;
            }
            cycle.push(cur / 2);
        }
        let barrier = |x: usize| cycle.contains(&x);
        let left = self.countries_touching(&self.flood(2 * e, &barrier));
        let right = self.countries_touching(&self.flood(2 * e + 1, &barrier));
        Ok(!left.is_empty() && !right.is_empty())
    }

    fn is_gamma(&self, d: usize) -> bool {
        matches!(self.kind[d / 2], EdgeKind::Gamma(_))
    }

    fn darts_at(&self, v: usize) -> Vec<usize> {
        (0..self.origin.len()).filter(|&d| self.origin[d] == v).collect()
    }

    fn export_faces(&self, interval_of: &HashMap<usize, Interval>) -> Result<Vec<Face>, MapError> {
        let (poly, count) = self.polygons();
        let mut uf = UnionFind::new(count);
        for e in 0..self.kind.len() {
            if self.kind[e] == EdgeKind::Virtual {
                uf.union(poly[2 * e], poly[2 * e + 1]);
            }
        }
        let succ = |d: usize| -> usize {
            let mut e = self.next[d];
            let mut guard = 0;
            while self.kind[e / 2] == EdgeKind::Virtual {
                e = self.next[twin(e)];
                guard += 1;
                assert!(guard <= self.next.len(), "virtual edges enclose a region");
            }
            e
        };
        let mut seen = vec![false; self.next.len()];
        let mut groups: HashMap<usize, (bool, Vec<Vec<Interval>>)> = HashMap::new();
        let mut order = Vec::new();
        for d in 0..self.next.len() {
            if seen[d] || !matches!(self.kind[d / 2], EdgeKind::Meridian(_)) {
                continue;
            }
            let mut cyc: Vec<Interval> = Vec::new();
            let mut cur = d;
            loop {
                seen[cur] = true;
                if let Some(&iv) = interval_of.get(&cur) {
                    if cyc.last() != Some(&iv) {
                        cyc.push(iv);
                    }
                }
                cur = succ(cur);
                if cur == d {
                    break;
                }
            }
            if cyc.len() > 1 && cyc.first() == cyc.last() {
                cyc.pop();
            }
            let root = uf.find(poly[d]);
            let entry = groups.entry(root).or_insert_with(|| {
                order.push(root);
                (self.in_s[d], Vec::new())
            });
            entry.1.push(cyc);
        }
        Ok(order
            .into_iter()
            .map(|r| {
                let (in_s, boundary) = groups.remove(&r).expect("present");
                Face { in_s, boundary }
            })
            .collect())
    }

    /// Shortest polygon path from the polygon left of dart `a` to the one left
    /// of dart `b`, crossing the given arcs in order and virtual edges
    /// freely. Returns the crossings with the dart crossed, left to right.
    pub(crate) fn route(&self, a: usize, b: usize, arcs: &[usize]) -> Option<Vec<usize>> {
        let (poly, count) = self.polygons();
        let mut out_darts = vec![Vec::new(); count];
        for d in 0..self.next.len() {
            out_darts[poly[d]].push(d);
        }
        let states = count * (arcs.len() + 1);
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; states];
        let mut seen = vec![false; states];
        let start = poly[a];
        let goal = poly[b] * (arcs.len() + 1) + arcs.len();
        seen[start * (arcs.len() + 1)] = true;
        let mut queue = VecDeque::from([start * (arcs.len() + 1)]);
        while let Some(st) = queue.pop_front() {
            if st == goal {
                let mut path = Vec::new();
                let mut cur = st;
                while let Some((prev, d)) = parent[cur] {
                    path.push(d);
                    cur = prev;
                }
                path.reverse();
                return Some(path);
            }
            let (p, k) = (st / (arcs.len() + 1), st % (arcs.len() + 1));
            for &d in &out_darts[p] {
                let k2 = match self.kind[d / 2] {
                    EdgeKind::Virtual => k,
                    EdgeKind::Gamma(arc) if k < arcs.len() && arc == arcs[k] => k + 1,
                    _ => continue,
                };
                let nxt = poly[twin(d)] * (arcs.len() + 1) + k2;
                if !seen[nxt] {
                    seen[nxt] = true;
                    parent[nxt] = Some((st, d));
                    if k2 == k {
                        queue.push_front(nxt);
                    } else {
                        queue.push_back(nxt);
                    }
                }
            }
        }
        None
    }
}
