use std::collections::BTreeSet;

use girth_map::{validate, Interval, SurfaceMap};

use crate::oracle::Uf;
use crate::view::View;
use crate::SurfaceError;

/// Removes the components of the subsurface that are discs, erasing their
/// boundary arcs and the slots those arcs use. Faces on either side of an
/// erased arc merge outside the subsurface.
pub(crate) fn drop_disc_pieces(m: &SurfaceMap) -> Result<SurfaceMap, SurfaceError> {
    let v = View::new(m)?;
    let discs: BTreeSet<usize> =
        v.s_components().into_iter().filter(|(_, chi)| *chi > 0).flat_map(|(faces, _)| faces).collect();
    if discs.is_empty() {
        return Ok(m.clone());
    }
    let mut gone = BTreeSet::new();
    for &f in &discs {
        for &iv in m.faces[f].boundary.iter().flatten() {
            if let Some(s) = m.end_slot(iv) {
                for t in [s, v.mate(s)] {
                    gone.insert(t);
                    gone.insert(v.partner[t]);
                }
            }
        }
    }
    let before = |iv: Interval| {
        let n = m.intervals_of(iv.country);
        Interval { country: iv.country, index: (iv.index + n - 1) % n }
    };
    let mut uf = Uf::new(m.faces.len());
    for &s in &gone {
        let after = v.starting_at(s);
        uf.union(v.face_of[&after], v.face_of[&before(after)]);
    }
    let roots: BTreeSet<usize> = discs.iter().map(|&f| uf.find(f)).collect();
    let key: Vec<(usize, bool)> = (0..m.faces.len())
        .map(|f| {
            let r = uf.find(f);
            (r, m.faces[f].in_s && !roots.contains(&r))
        })
        .collect();

    let mut out = m.clone();
    for slots in &mut out.countries {
        slots.retain(|s| !gone.contains(s));
    }
    out.gluing.retain(|p| !gone.contains(&p[0]));
    out.arcs.retain(|a| !gone.contains(&a[0]));
    let res = out.with_retraced_faces(|niv| {
        let old = match out.start_slot(niv) {
            Some(u) => v.starting_at(u),
            None => Interval { country: niv.country, index: 0 },
        };
        key[v.face_of[&old]]
    })?;
    validate(&res).map_err(|mut e| e.remove(0))?;
    Ok(res)
}
