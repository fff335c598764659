use std::collections::BTreeMap;

use girth_interface::{Color, DInterface};
use girth_map::{half_disc_is_essential, DiscCurve, HalfDiscPath, Interval, SurfaceMap};

use crate::oracle::Uf;
use crate::segregation::country_color;
use crate::view::View;
use crate::SurfaceError;

/// A boundary component of the neighbourhood of the continents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryPiece {
    Circle(DiscCurve),
    /// An arc with both ends on the outer gray country.
    Arc(HalfDiscPath),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UBoundary {
    pub piece: BoundaryPiece,
    /// Whether the piece can not be pushed off every country: a circle with
    /// countries on both sides, or an essential half-disc.
    pub essential: bool,
    /// Points where it meets the subsurface boundary.
    pub crossings: usize,
    /// In-S faces it passes through, with the number of passes.
    pub road_passes: BTreeMap<usize, usize>,
}

impl UBoundary {
    /// Meets every road in at most one arc.
    pub fn is_minimal(&self) -> bool {
        self.road_passes.values().all(|&k| k <= 1)
    }
}

/// The neighbourhood U of the countries together with every subsurface
/// boundary arc that does not join a black country to a white one. For a
/// half-disc interface the gray country is the outside and is left out of U.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinentDecomposition {
    pub interface: DInterface,
    /// The country drawn around the point at infinity.
    pub outer: usize,
    /// Countries of each continent, sorted.
    pub continents: Vec<Vec<usize>>,
    pub boundary: Vec<UBoundary>,
}

impl ContinentDecomposition {
    pub fn circles(&self) -> impl Iterator<Item = &UBoundary> {
        self.boundary.iter().filter(|b| matches!(b.piece, BoundaryPiece::Circle(_)))
    }

    pub fn arcs(&self) -> impl Iterator<Item = &UBoundary> {
        self.boundary.iter().filter(|b| matches!(b.piece, BoundaryPiece::Arc(_)))
    }
}

/// One step of a walk along the edge of U: the interval passed, and the
/// arc crossed at its end if that arc is not part of U.
struct Step {
    iv: Interval,
    crossing: Option<(usize, u8)>,
}

pub fn continents(m: &SurfaceMap, a: &DInterface) -> Result<ContinentDecomposition, SurfaceError> {
    let v = View::new(m)?;
    let gray = (0..m.countries.len()).find(|&c| country_color(a, c) == Color::Gray);
    let outer = gray.unwrap_or_else(|| {
        (0..m.countries.len()).find(|&c| country_color(a, c) == Color::Black).expect("interfaces have black")
    });
    let in_u = |arc: usize| {
        let [s, t] = m.arcs[arc];
        let pair = [country_color(a, v.country_of_slot[s]), country_color(a, v.country_of_slot[t])];
        !matches!(pair, [Color::Black, Color::White] | [Color::White, Color::Black])
    };

    let nc = m.countries.len();
    let mut cuf = Uf::new(nc);
    for (arc, &[s, t]) in m.arcs.iter().enumerate() {
        let (c, d) = (v.country_of_slot[s], v.country_of_slot[t]);
        if in_u(arc) && Some(c) != gray && Some(d) != gray {
            cuf.union(c, d);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in (0..nc).filter(|&c| Some(c) != gray) {
        groups.entry(cuf.find(c)).or_default().push(c);
    }
    let continents: Vec<Vec<usize>> = groups.into_values().collect();

    let mut cycles: Vec<Vec<Step>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut fuf = Uf::new(m.faces.len());
    for start in m.all_intervals() {
        if seen.contains(&start) {
            continue;
        }
        let mut cyc = Vec::new();
        let mut iv = start;
        loop {
            seen.insert(iv);
            let Some(s) = m.end_slot(iv) else {
                cyc.push(Step { iv, crossing: None });
                break;
            };
            let arc = v.arc_of_slot[s];
            let next = if in_u(arc) {
                cyc.push(Step { iv, crossing: None });
                v.starting_at(v.mate(s))
            } else {
                cyc.push(Step { iv, crossing: Some((arc, v.quarter_near(arc, s))) });
                let n = v.next_on_country(iv);
                fuf.union(v.face_of[&iv], v.face_of[&n]);
                n
            };
            if next == start {
                break;
            }
            iv = next;
        }
        cycles.push(cyc);
    }
    let mut per_region: BTreeMap<usize, usize> = BTreeMap::new();
    for cyc in &cycles {
        *per_region.entry(fuf.find(v.face_of[&cyc[0].iv])).or_default() += 1;
    }

    let mut boundary = Vec::new();
    for cyc in &cycles {
        let on_gray: Vec<usize> = (0..cyc.len()).filter(|&k| Some(cyc[k].iv.country) == gray).collect();
        if on_gray.is_empty() {
            let essential = per_region[&fuf.find(v.face_of[&cyc[0].iv])] >= 2;
            boundary.push(circle(m, &v, cyc, essential));
        } else if !m.countries[gray.expect("on gray")].is_empty() {
            for (j, &p) in on_gray.iter().enumerate() {
                let q = on_gray[(j + 1) % on_gray.len()];
                boundary.push(gray_arc(m, &v, cyc, p, q)?);
            }
        }
    }
    Ok(ContinentDecomposition { interface: a.clone(), outer, continents, boundary })
}

fn passes(m: &SurfaceMap, faces: &[usize]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for &f in faces.iter().filter(|&&f| m.faces[f].in_s) {
        *out.entry(f).or_default() += 1;
    }
    out
}

fn circle(m: &SurfaceMap, v: &View, cyc: &[Step], essential: bool) -> UBoundary {
    let mut faces = Vec::new();
    let mut crossings = Vec::new();
    for st in cyc {
        if let Some(c) = st.crossing {
            faces.push(v.face_of[&st.iv]);
            crossings.push(c);
        }
    }
    let encircles = if crossings.is_empty() {
        let f = v.face_of[&cyc[0].iv];
        faces.push(f);
        m.faces[f].boundary.iter().position(|c| c.contains(&cyc[0].iv))
    } else {
        None
    };
    let road_passes = passes(m, &faces);
    let n = crossings.len();
    UBoundary {
        piece: BoundaryPiece::Circle(DiscCurve { faces, crossings, encircles }),
        essential,
        crossings: n,
        road_passes,
    }
}

/// The piece of a gray-touching cycle from the gray interval at step `p` to
/// the next one at step `q`.
fn gray_arc(m: &SurfaceMap, v: &View, cyc: &[Step], p: usize, q: usize) -> Result<UBoundary, SurfaceError> {
    let len = cyc.len();
    let mut faces = vec![v.face_of[&cyc[p].iv]];
    let mut arcs = Vec::new();
    let mut k = (p + 1) % len;
    while k != q {
        if let Some((arc, _)) = cyc[k].crossing {
            arcs.push(arc);
            faces.push(v.face_of[&v.next_on_country(cyc[k].iv)]);
        }
        k = (k + 1) % len;
    }
    let path = HalfDiscPath { country: cyc[p].iv.country, from: cyc[p].iv.index, to: cyc[q].iv.index, faces, arcs };
    let essential = half_disc_is_essential(m, &path)?;
    let road_passes = passes(m, &path.faces);
    let n = path.arcs.len();
    Ok(UBoundary { piece: BoundaryPiece::Arc(path), essential, crossings: n, road_passes })
}
