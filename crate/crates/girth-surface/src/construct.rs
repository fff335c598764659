use std::fmt;

use girth_interface::{Color, DInterface};
use girth_map::{half_disc_circle, min_essential_half_disc, Complex, DiscCurve, SurfaceMap};
use girth_word::{CyclicWord, Word};

use crate::continents::{continents, BoundaryPiece, UBoundary};
use crate::oracle::{comp_chi, components};
use crate::segregation::{country_color, SegregationReport};
use crate::walks::{Control, WalkSearch};
use crate::{ec, SurfaceError};

const CURVE_BUDGET: usize = 5_000_000;

/// An embedded closed curve in the subsurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCurve {
    /// The word read crossing the disc system, as a conjugacy class.
    pub word: CyclicWord,
    /// Points where it meets the disc curve it was built against.
    pub crossings: usize,
    /// Polygon sides crossed, as `edge` ids of the map's cell structure
    /// with `+` or `-` for the direction.
    pub route: Vec<(usize, bool)>,
}

impl fmt::Display for SurfaceCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (e, fwd)) in self.route.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "e{e}{}", if *fwd { '+' } else { '-' })?;
        }
        Ok(())
    }
}

fn violation(msg: String) -> SurfaceError {
    SurfaceError::PostconditionViolation(msg)
}

/// Doubled `d(K)`: per non-segregating road met, `min(2, prongs - 2)`.
fn twice_d(m: &SurfaceMap, b: &UBoundary, seg: &SegregationReport) -> i64 {
    b.road_passes
        .keys()
        .filter(|&&f| !seg.is_segregating(f) && m.faces[f].boundary.len() == 1)
        .map(|&f| {
            let p = m.faces[f].boundary[0].iter().filter(|iv| !m.countries[iv.country].is_empty()).count() as i64;
            (p - 2).clamp(0, 2)
        })
        .sum()
}

/// A circle in the map's sphere, missing every country and bounding an
/// essential disc, that meets the subsurface in few arcs: at most
/// `ec(S) + n` for a disc interface with `n` segregating roads, at most
/// `ec(S) + 2m + 1` for a half-disc interface with `m`. The map must be
/// locally minimal with polygonal faces. Candidates are the essential
/// circles around the continents and, for half-discs, circles closed up
/// from essential half-discs at the gray country; the one with fewest
/// crossings is returned.
pub fn construct_disc(m: &SurfaceMap, a: &DInterface, seg: &SegregationReport) -> Result<DiscCurve, SurfaceError> {
    let e = ec(m)?;
    let n = seg.count() as i64;
    let dec = continents(m, a)?;
    let mut best: Option<DiscCurve> = None;
    let mut consider = |c: DiscCurve| {
        if best.as_ref().is_none_or(|b| c.crossing_count() < b.crossing_count()) {
            best = Some(c);
        }
    };
    for b in dec.boundary.iter().filter(|b| b.essential) {
        if b.is_minimal() {
            let bound = twice_d(m, b, seg) + 2 * n;
            if b.crossings as i64 > bound {
                return Err(violation(format!(
                    "boundary piece of U meets the subsurface boundary {} times, above 2d+2m = {bound}",
                    b.crossings
                )));
            }
        }
        match &b.piece {
            BoundaryPiece::Circle(c) => consider(c.clone()),
            BoundaryPiece::Arc(k) => consider(half_disc_circle(m, k)?),
        }
    }
    let gray = (0..m.countries.len()).find(|&c| country_color(a, c) == Color::Gray);
    let limit = match gray {
        None => e + n,
        Some(_) => e + 2 * n + 1,
    };
    if let Some(g) = gray {
        if let Some(k) = min_essential_half_disc(m, g, limit.max(0) as usize)? {
            consider(half_disc_circle(m, &k)?);
        }
    }
    let Some(c) = best else {
        return Err(violation(format!("no essential disc found for interface {a}")));
    };
    let arcs = c.crossing_count() as i64 / 2;
    if arcs > limit {
        return Err(violation(format!("disc for {a} meets the subsurface in {arcs} arcs, above the bound {limit}")));
    }
    Ok(c)
}

/// The essential curve of the subsurface that meets the disc curve `k`
/// least often, among embedded dual walks. A walk reading the trivial word
/// counts when it bounds no disc in the subsurface. Checks the crossing
/// bound that a system of that many arcs forces.
pub fn construct_curve(m: &SurfaceMap, k: &DiscCurve) -> Result<SurfaceCurve, SurfaceError> {
    let (mut cx, dart_of) = Complex::from_map(m)?;
    let probe = if k.crossings.is_empty() { Vec::new() } else { cx.draw_disc_curve(m, &dart_of, k)? };
    let dual = cx.dual_of_s();
    let cost: Vec<usize> = dual.edges.iter().map(|de| usize::from(probe.contains(&de.edge))).collect();
    let mut best: Option<SurfaceCurve> = None;
    let mut search = WalkSearch::new(&dual, cost, vec![true; dual.polygon_len.len()], dual.edges.len(), CURVE_BUDGET);
    let mut failure = None;
    search.run(&mut |walk| {
        let w = Word::new(m.genus, walk.letters.clone()).expect("letters in rank").cyclic();
        let route: Vec<(usize, bool)> = walk.steps.iter().map(|&(e, fwd)| (dual.edges[e].edge, fwd)).collect();
        if w.is_empty() {
            match cx.bounds_disc_in_s(&route) {
                Ok(false) => {}
                Ok(true) => return Control::Continue,
                Err(e) => {
                    failure = Some(e);
                    return Control::Stop;
                }
            }
        }
        best = Some(SurfaceCurve { word: w, crossings: walk.cost, route });
        if walk.cost == 0 {
            Control::Stop
        } else {
            Control::Below(walk.cost)
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    let Some(curve) = best else {
        return Err(SurfaceError::LengthBound { bound: dual.edges.len() });
    };

    let pieces: Vec<i64> = components(&dual).iter().map(|c| comp_chi(&dual, c)).filter(|&chi| chi <= 0).collect();
    let need: i64 = pieces.iter().map(|chi| 1 - chi).sum();
    let arcs = k.crossing_count() as i64 / 2;
    let bound = if arcs < need {
        0
    } else {
        let extra = arcs - need;
        if pieces.len() == 1 && pieces[0] <= -1 && extra >= 2 {
            extra
        } else {
            extra + 1
        }
    };
    if curve.crossings as i64 > bound {
        return Err(violation(format!(
            "curve meets a disc of {arcs} arcs {} times, above the bound {bound}",
            curve.crossings
        )));
    }
    Ok(curve)
}
