use crate::{MapError, SurfaceMap};

/// Cuts the subsurface along an arc running across the single-cycle in-S
/// face `face` from the middle of arc `x` to the middle of arc `y`. The two
/// arcs are reconnected across the cut, the face splits in two, and the
/// out-of-S faces beyond `x` and `y` merge.
pub fn cut_road(m: &SurfaceMap, face: usize, x: usize, y: usize) -> Result<SurfaceMap, MapError> {
    let reject = |why: &str| Err(MapError::Inconsistent(format!("cannot cut face {face}: {why}")));
    let Some(road) = m.faces.get(face) else { return reject("no such face") };
    if !road.in_s || road.boundary.len() != 1 {
        return reject("not a single-cycle face of S");
    }
    if x == y {
        return reject("the two arcs coincide");
    }
    let cyc = &road.boundary[0];
    let arc_at = |slot: usize| m.arcs.iter().position(|a| a.contains(&slot));
    let leaving: Vec<Option<usize>> = cyc.iter().map(|&iv| m.end_slot(iv).and_then(&arc_at)).collect();
    let (Some(kx), Some(ky)) = (leaving.iter().position(|&a| a == Some(x)), leaving.iter().position(|&a| a == Some(y)))
    else {
        return reject("arcs do not both border it");
    };
    let s1 = m.end_slot(cyc[kx]).expect("arc leaves a slot");
    let s2 = m.end_slot(cyc[ky]).expect("arc leaves a slot");
    let other = |a: usize, s: usize| if m.arcs[a][0] == s { m.arcs[a][1] } else { m.arcs[a][0] };
    let (t1, t2) = (other(x, s1), other(y, s2));
    let mut cut = m.clone();
    cut.arcs[x] = [s1, t2];
    cut.arcs[y] = [s2, t1];

    let p = cyc.len();
    let first_half: Vec<_> = (1..=(ky + p - kx) % p).map(|j| cyc[(kx + j) % p]).collect();
    let mut face_of = std::collections::HashMap::new();
    for (fi, f) in m.faces.iter().enumerate() {
        for iv in f.boundary.iter().flatten() {
            face_of.insert(*iv, fi);
        }
    }
    // Beyond an arc lies the face holding the interval that ends at the
    // slot where the road resumes after the arc.
    let beyond = |s: usize| {
        let iv = m.all_intervals().find(|&iv| m.end_slot(iv) == Some(s)).expect("every slot ends an interval");
        face_of[&iv]
    };
    let fx = beyond(t1);
    let fy = beyond(t2);
    let fresh = m.faces.len();
    let out = cut.with_retraced_faces(|iv| {
        let f = face_of[&iv];
        if f == face {
            (if first_half.contains(&iv) { face } else { fresh }, true)
        } else if f == fy {
            (fx, m.faces[fx].in_s)
        } else {
            (f, m.faces[f].in_s)
        }
    })?;
    crate::validate(&out).map_err(|mut e| e.remove(0))?;
    Ok(out)
}
