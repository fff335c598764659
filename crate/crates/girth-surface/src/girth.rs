use std::collections::HashSet;
use std::fmt;

use girth_curve::girth_word;
use girth_interface::{enumerate_d_discs, enumerate_d_half_discs, DInterface};
use girth_map::{boundary_components, cut_road, locally_minimize_map, DiscCurve, MapError, SurfaceMap};
use girth_word::Word;

use crate::construct::{construct_curve, construct_disc, SurfaceCurve};
use crate::prune::drop_disc_pieces;
use crate::segregation::{segregating_roads, Line};
use crate::view::View;
use crate::{ec, SurfaceError};

/// Cuts deeper than this mean the complexity measure stopped decreasing.
const MAX_DEPTH: usize = 64;

/// How a witness was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// The interface whose disc the curve was built against; `None` when a
    /// face with several boundary cycles gave a compressing loop.
    pub interface: Option<DInterface>,
    /// Segregating roads of that interface.
    pub segregating: usize,
    /// Arcs in which the disc meets the subsurface.
    pub disc_arcs: usize,
    /// Lines of segregation cut before the witness was found, outermost first.
    pub cuts: Vec<Line>,
    /// Girth of the curve's word.
    pub girth: usize,
}

/// A curve of the subsurface with girth within the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub curve: SurfaceCurve,
    /// The disc curve it was built against, on `map`.
    pub disc: Option<DiscCurve>,
    /// The locally minimal, possibly cut, map the curve and disc are drawn on.
    pub map: SurfaceMap,
    pub certificate: Certificate,
}

impl Witness {
    /// The disc as a face path: each face visited is followed by the arc
    /// crossed next and the quarter along that arc.
    pub fn disc_id(&self) -> Option<String> {
        self.disc.as_ref().map(disc_id)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "curve={}", self.curve.word)?;
        match &self.disc {
            Some(d) => write!(f, " disc={}", disc_id(d))?,
            None => write!(f, " disc=-")?,
        }
        if let Some(a) = &self.certificate.interface {
            write!(f, " interface={a}")?;
        }
        Ok(())
    }
}

fn disc_id(d: &DiscCurve) -> String {
    let mut out = String::new();
    for (j, f) in d.faces.iter().enumerate() {
        if j > 0 {
            out.push('.');
        }
        out.push_str(&format!("f{f}"));
        if let Some((a, q)) = d.crossings.get(j) {
            out.push_str(&format!(".a{a}/{q}"));
        }
    }
    out
}

/// One bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GirthRun {
    pub bound: usize,
    pub witness: Option<Witness>,
    /// Distinct maps examined, including cut ones.
    pub maps_examined: usize,
    /// Human-readable log of the search.
    pub trace: Vec<String>,
}

struct Search {
    n: usize,
    seen: HashSet<String>,
    trace: Vec<String>,
}

/// Looks for a curve of girth at most `n` in the subsurface of `m`. Each
/// disc interface with at most `n` segregating roads yields a disc meeting
/// the subsurface in few arcs and a curve meeting that disc few times; each
/// line of segregation is cut and the smaller subsurface searched in turn.
/// Half-disc interfaces follow with threshold `n / 2`.
pub fn girth_surface(n: usize, m: &SurfaceMap) -> Result<GirthRun, SurfaceError> {
    let mut s = Search { n, seen: HashSet::new(), trace: Vec::new() };
    let witness = s.visit(m, &[], 0)?;
    Ok(GirthRun { bound: n, witness, maps_examined: s.seen.len(), trace: s.trace })
}

/// The least `n <= max` for which [`girth_surface`] finds a witness, with
/// that run; `None` when the girth exceeds `max` or the subsurface has no
/// essential curve.
pub fn surface_girth(m: &SurfaceMap, max: usize) -> Result<Option<GirthRun>, SurfaceError> {
    for n in 0..=max {
        let run = girth_surface(n, m)?;
        if run.witness.is_some() {
            return Ok(Some(run));
        }
    }
    Ok(None)
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), SurfaceError> {
    if ok {
        Ok(())
    } else {
        Err(SurfaceError::PostconditionViolation(msg()))
    }
}

impl Search {
    fn visit(&mut self, m: &SurfaceMap, cuts: &[Line], depth: usize) -> Result<Option<Witness>, SurfaceError> {
        if depth > MAX_DEPTH {
            return Err(SurfaceError::RecursionGuard(format!("more than {MAX_DEPTH} nested cuts")));
        }
        if !View::new(m)?.has_essential_curves() {
            self.trace.push(format!("{:depth$}no essential curve", ""));
            return Ok(None);
        }
        let m = &drop_disc_pieces(m)?;
        if let Some(w) = self.trivial_boundary(m, cuts, depth)? {
            return Ok(Some(w));
        }
        let (m, steps) = match locally_minimize_map(m) {
            Ok(r) => r,
            Err(MapError::DetachedBoundary { essential: true }) => {
                self.trace.push(format!("{:depth$}boundary curve misses every disc", ""));
                return Ok(Some(self.detached(m, cuts)?));
            }
            Err(MapError::DetachedBoundary { essential: false }) => {
                // The curve bounds a disc of the boundary surface missing the
                // disc system. Unless its side of S is that disc, S has a
                // curve bounding a disc in the handlebody.
                if View::new(m)?.s_components().iter().any(|(_, chi)| *chi > 0) {
                    return Err(SurfaceError::Unsupported(
                        "an inessential boundary curve misses every disc beside a disc of S".into(),
                    ));
                }
                self.trace.push(format!("{:depth$}boundary curve bounds a disc missing every disc", ""));
                return Ok(Some(self.detached(m, cuts)?));
            }
            Err(e) => return Err(e.into()),
        };
        if !self.seen.insert(m.to_json()) {
            return Ok(None);
        }
        self.trace.push(format!(
            "{:depth$}map with {} crossings after {} moves, ec {}",
            "",
            m.crossings(),
            steps.len(),
            ec(&m)?
        ));
        if let Some(w) = self.multi_cycle(&m, cuts)? {
            return Ok(Some(w));
        }
        let n = self.n;
        for d in enumerate_d_discs(m.genus) {
            if let Some(w) = self.try_interface(&m, d.interface(), n, cuts, depth)? {
                return Ok(Some(w));
            }
        }
        for h in enumerate_d_half_discs(m.genus) {
            if let Some(w) = self.try_interface(&m, h.interface(), n / 2, cuts, depth)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn try_interface(
        &mut self,
        m: &SurfaceMap,
        a: &DInterface,
        threshold: usize,
        cuts: &[Line],
        depth: usize,
    ) -> Result<Option<Witness>, SurfaceError> {
        let seg = segregating_roads(m, a)?;
        if seg.count() > threshold {
            return Ok(None);
        }
        let disc = construct_disc(m, a, &seg)?;
        let curve = construct_curve(m, &disc)?;
        let k = curve.crossings;
        let emit = if m.genus >= 2 { k <= self.n.max(1) } else { k <= self.n };
        self.trace.push(format!(
            "{:depth$}{a}: {} segregating, disc meets S in {} arcs, curve {} crosses it {k} times",
            "",
            seg.count(),
            disc.crossing_count() / 2,
            curve.word
        ));
        if emit {
            let g = girth_word(&curve.word.to_word())?.girth;
            check(g <= k, || format!("curve {} has girth {g} above its {k} crossings", curve.word))?;
            check(k != 1 || m.genus == 1 || g == 0, || {
                format!("curve {} meets a disc once but has girth {g}", curve.word)
            })?;
            check(g <= self.n, || format!("curve {} has girth {g} above the bound {}", curve.word, self.n))?;
            let certificate = Certificate {
                interface: Some(a.clone()),
                segregating: seg.count(),
                disc_arcs: disc.crossing_count() / 2,
                cuts: cuts.to_vec(),
                girth: g,
            };
            return Ok(Some(Witness { curve, disc: Some(disc), map: m.clone(), certificate }));
        }
        let before = ec(m)?;
        for road in &seg.roads {
            for line in &road.lines {
                let cut = cut_road(m, line.road, line.arcs[0], line.arcs[1])?;
                let after = ec(&cut)?;
                check(after == before - 1, || format!("cutting {line} took ec from {before} to {after}"))?;
                self.trace.push(format!("{:depth$}cut {line}", ""));
                let mut deeper = cuts.to_vec();
                deeper.push(*line);
                if let Some(w) = self.visit(&cut, &deeper, depth + 1)? {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }

    /// A face with several boundary cycles holds a loop that bounds a disc
    /// missing the disc system. In the subsurface that loop is a curve of
    /// girth zero; outside it the loop is a disc missing the subsurface.
    fn multi_cycle(&mut self, m: &SurfaceMap, cuts: &[Line]) -> Result<Option<Witness>, SurfaceError> {
        let Some(f) = m.faces.iter().position(|f| f.boundary.len() > 1) else {
            return Ok(None);
        };
        let loop_curve = DiscCurve { faces: vec![f], crossings: Vec::new(), encircles: Some(0) };
        let curve = if m.faces[f].in_s {
            SurfaceCurve { word: Word::empty(m.genus).cyclic(), crossings: 0, route: Vec::new() }
        } else {
            construct_curve(m, &loop_curve)?
        };
        self.trace.push(format!("face f{f} has {} boundary cycles", m.faces[f].boundary.len()));
        let g = if curve.word.is_empty() { 0 } else { girth_word(&curve.word.to_word())?.girth };
        check(g == 0, || format!("curve {} missing a compressing disc has girth {g}", curve.word))?;
        let disc = (!m.faces[f].in_s).then_some(loop_curve);
        let certificate = Certificate { interface: None, segregating: 0, disc_arcs: 0, cuts: cuts.to_vec(), girth: 0 };
        Ok(Some(Witness { curve, disc, map: m.clone(), certificate }))
    }

    /// A boundary curve reading the trivial word on a piece of S that is not
    /// a disc, pushed into S, bounds a disc in the handlebody.
    fn trivial_boundary(
        &mut self,
        m: &SurfaceMap,
        cuts: &[Line],
        depth: usize,
    ) -> Result<Option<Witness>, SurfaceError> {
        let v = View::new(m)?;
        let pieces = v.s_components();
        for b in boundary_components(m) {
            if !b.word.cyclic().is_empty() {
                continue;
            }
            let f = v.s_face_at(b.slots[0]);
            if pieces.iter().any(|(faces, chi)| *chi <= 0 && faces.contains(&f)) {
                self.trace
                    .push(format!("{:depth$}boundary curve through slot {} reads the trivial word", "", b.slots[0]));
                return Ok(Some(self.detached(m, cuts)?));
            }
        }
        Ok(None)
    }

    /// A boundary curve of the subsurface missing every disc, pushed into
    /// the subsurface, is a girth-zero curve.
    fn detached(&mut self, m: &SurfaceMap, cuts: &[Line]) -> Result<Witness, SurfaceError> {
        let word = Word::empty(m.genus).cyclic();
        let curve = SurfaceCurve { word, crossings: 0, route: Vec::new() };
        let certificate = Certificate { interface: None, segregating: 0, disc_arcs: 0, cuts: cuts.to_vec(), girth: 0 };
        Ok(Witness { curve, disc: None, map: m.clone(), certificate })
    }
}
