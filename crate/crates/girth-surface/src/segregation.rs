use std::fmt;

use girth_interface::{Color, DInterface};
use girth_map::SurfaceMap;
use girth_word::Letter;

use crate::view::View;
use crate::SurfaceError;

/// A way to split a segregating road: an arc across face `road` from the
/// middle of `arcs[0]` to the middle of `arcs[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Line {
    pub road: usize,
    pub arcs: [usize; 2],
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}:a{}-a{}", self.road, self.arcs[0], self.arcs[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegregatingRoad {
    pub face: usize,
    pub prongs: usize,
    pub lines: Vec<Line>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegregationReport {
    pub interface: DInterface,
    pub roads: Vec<SegregatingRoad>,
}

impl SegregationReport {
    pub fn count(&self) -> usize {
        self.roads.len()
    }

    pub fn is_segregating(&self, face: usize) -> bool {
        self.roads.iter().any(|r| r.face == face)
    }
}

pub(crate) fn country_color(a: &DInterface, c: usize) -> Color {
    a.color(Letter::from_index(c))
}

/// Roads (single-cycle in-S faces) that border black and white countries
/// but no gray one, with black borders forming one run around the road.
/// Each has one line, crossing the two arcs where the colour changes.
pub fn segregating_roads(m: &SurfaceMap, a: &DInterface) -> Result<SegregationReport, SurfaceError> {
    if a.rank() != m.genus {
        return Err(SurfaceError::Unsupported(format!("interface of rank {} on a genus {} map", a.rank(), m.genus)));
    }
    let v = View::new(m)?;
    let mut roads = Vec::new();
    for (fi, f) in m.faces.iter().enumerate() {
        if !f.in_s || f.boundary.len() != 1 {
            continue;
        }
        let borders: Vec<_> = f.boundary[0].iter().filter(|iv| !m.countries[iv.country].is_empty()).copied().collect();
        let colors: Vec<Color> = borders.iter().map(|iv| country_color(a, iv.country)).collect();
        if colors.contains(&Color::Gray) || !colors.contains(&Color::Black) || !colors.contains(&Color::White) {
            continue;
        }
        let p = colors.len();
        let changes: Vec<usize> = (0..p).filter(|&k| colors[k] != colors[(k + 1) % p]).collect();
        if changes.len() != 2 {
            continue;
        }
        let arc_after = |k: usize| {
            let end = m.end_slot(borders[k]).expect("border has slots");
            v.arc_of_slot[end]
        };
        let mut arcs = [arc_after(changes[0]), arc_after(changes[1])];
        arcs.sort_unstable();
        roads.push(SegregatingRoad { face: fi, prongs: p, lines: vec![Line { road: fi, arcs }] });
    }
    Ok(SegregationReport { interface: a.clone(), roads })
}
