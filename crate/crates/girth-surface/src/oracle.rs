use std::collections::HashMap;

use girth_curve::girth_word;
use girth_map::{validate, Complex, DualGraph, SurfaceMap};
use girth_word::{CyclicWord, Word};

use crate::walks::{Control, WalkSearch};
use crate::SurfaceError;

/// Result of the brute-force girth search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    /// Least girth over embedded essential curves; `None` when every
    /// component of the subsurface is a disc.
    pub girth: Option<usize>,
    /// A curve attaining it, when the answer came from a curve rather than
    /// from a kernel element of the subsurface group.
    pub witness: Option<CyclicWord>,
    /// Whether some component's group maps non-injectively to the handlebody.
    pub compressible: bool,
    /// Distinct cyclic words met.
    pub words_seen: usize,
}

/// Enumerates embedded closed curves in the subsurface through at most
/// `length_bound` polygon sides and returns the least girth of their words.
/// A component whose group does not inject into the handlebody group, or
/// that has no boundary, contains a compressible curve and scores zero.
pub fn oracle_surface_girth(m: &SurfaceMap, length_bound: usize, budget: usize) -> Result<OracleOutcome, SurfaceError> {
    validate(m).map_err(|mut e| e.remove(0))?;
    let (cx, _) = Complex::from_map(m)?;
    let dual = cx.dual_of_s();
    let mut out = OracleOutcome { girth: None, witness: None, compressible: false, words_seen: 0 };
    let mut cache: HashMap<CyclicWord, usize> = HashMap::new();
    for comp in components(&dual) {
        let chi = comp_chi(&dual, &comp);
        if chi > 0 {
            continue;
        }
        let bounded = comp.iter().any(|&p| dual.on_boundary[p]);
        if !bounded || folded_rank(&dual, &comp) < (1 - chi) as usize {
            out.compressible = true;
            out.girth = Some(0);
            out.witness = None;
            continue;
        }
        let mut allowed = vec![false; dual.polygon_len.len()];
        for &p in &comp {
            allowed[p] = true;
        }
        let mut best: Option<(usize, CyclicWord)> = None;
        let mut failure = None;
        let mut search = WalkSearch::new(&dual, vec![0; dual.edges.len()], allowed, length_bound, budget);
        search.run(&mut |walk| {
            let w = Word::new(m.genus, walk.letters.clone()).expect("letters in rank").cyclic();
            if w.is_empty() {
                return Control::Continue;
            }
            let g = match cache.get(&w) {
                Some(&g) => g,
                None => match girth_word(&w.to_word()) {
                    Ok(cert) => {
                        cache.insert(w.clone(), cert.girth);
                        cert.girth
                    }
                    Err(e) => {
                        failure = Some(e);
                        return Control::Stop;
                    }
                },
            };
            if best.as_ref().is_none_or(|(b, bw)| (g, &w) < (*b, bw)) {
                best = Some((g, w));
            }
            if g == 0 {
                Control::Stop
            } else {
                Control::Continue
            }
        })?;
        if let Some(e) = failure {
            return Err(e.into());
        }
        let Some((g, w)) = best else {
            return Err(SurfaceError::LengthBound { bound: length_bound });
        };
        if out.girth.is_none_or(|b| g < b) {
            out.girth = Some(g);
            out.witness = Some(w);
        }
    }
    out.words_seen = cache.len();
    Ok(out)
}

/// Polygon sets of the connected pieces of the dual graph.
pub(crate) fn components(dual: &DualGraph) -> Vec<Vec<usize>> {
    let n = dual.polygon_len.len();
    let mut uf = Uf::new(n);
    for e in &dual.edges {
        uf.union(e.from.0, e.to.0);
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for p in 0..n {
        groups.entry(uf.find(p)).or_default().push(p);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Euler characteristic of the subsurface piece around `comp`: polygons,
/// less shared sides, plus the cell structure's vertices inside the piece.
pub(crate) fn comp_chi(dual: &DualGraph, comp: &[usize]) -> i64 {
    let inside = |p: usize| comp.contains(&p);
    let edges = dual.edges.iter().filter(|e| inside(e.from.0)).count() as i64;
    let vertices = dual.interior_vertices.iter().filter(|&&p| inside(p)).count() as i64;
    comp.len() as i64 - edges + vertices
}

/// Rank of the image of the piece's group in the free group: fold the
/// labelled dual graph, with unlabelled sides contracted, and count cycles.
fn folded_rank(dual: &DualGraph, comp: &[usize]) -> usize {
    let n = dual.polygon_len.len();
    let mut uf = Uf::new(n);
    let inside = |p: usize| comp.contains(&p);
    for e in dual.edges.iter().filter(|e| inside(e.from.0) && e.letter.is_none()) {
        uf.union(e.from.0, e.to.0);
    }
    let labelled: Vec<(usize, usize, usize)> = dual
        .edges
        .iter()
        .filter(|e| inside(e.from.0))
        .filter_map(|e| e.letter.map(|l| (e.from.0, l.index(), e.to.0)))
        .collect();
    loop {
        let mut out_of: HashMap<(usize, usize), usize> = HashMap::new();
        let mut merged = false;
        for &(u, l, v) in &labelled {
            let (u, v) = (uf.find(u), uf.find(v));
            for (key, target) in [((u, l), v), ((v, l ^ 1), u)] {
                match out_of.get(&key) {
                    Some(&t) if uf.find(t) != uf.find(target) => {
                        uf.union(t, target);
                        merged = true;
                    }
                    Some(_) => {}
                    None => {
                        out_of.insert(key, target);
                    }
                }
            }
        }
        if !merged {
            break;
        }
    }
    let mut edges: Vec<(usize, usize, usize)> = labelled.iter().map(|&(u, l, v)| (uf.find(u), l, uf.find(v))).collect();
    edges.sort_unstable();
    edges.dedup();
    let mut verts: Vec<usize> = comp.iter().map(|&p| uf.find(p)).collect();
    verts.sort_unstable();
    verts.dedup();
    edges.len() + 1 - verts.len()
}

pub(crate) struct Uf(Vec<usize>);

impl Uf {
    pub fn new(n: usize) -> Self {
        Uf((0..n).collect())
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}
