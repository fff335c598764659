use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::complex::{Crossing, T_SCALE};
use crate::map::partner_country;
use crate::validate::{ending_at, Layout, UnionFind};
use crate::{validate, Complex, DiscCurve, EdgeKind, HalfDiscPath, Interval, MapError, SurfaceMap};

/// One move of the map descent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapStep {
    /// An arc together with one country interval bounded a face; the arc was
    /// pushed across the disc.
    Bigon { interval: Interval, before: usize, after: usize },
    /// The disc of the path's country was replaced by a boundary compression
    /// along the path.
    Compress { path: HalfDiscPath, before: usize, after: usize },
}

impl fmt::Display for MapStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapStep::Bigon { interval, before, after } => {
                write!(f, "bigon {interval}: crossings {before} -> {after}")
            }
            MapStep::Compress { path, before, after } => {
                write!(f, "compress {path}: crossings {before} -> {after}")
            }
        }
    }
}

/// A face bounded by one proper interval and the arc joining its ends.
fn find_bigon(m: &SurfaceMap, skip: &BTreeSet<Interval>) -> Option<Interval> {
    m.faces.iter().find_map(|f| match f.boundary.as_slice() {
        [cyc] if cyc.len() == 1 && m.countries[cyc[0].country].len() >= 2 && !skip.contains(&cyc[0]) => Some(cyc[0]),
        _ => None,
    })
}

/// Pushes the arc of bigon `iv` across its disc, removing two crossings.
/// Fails if the boundary component would then miss every disc.
fn remove_bigon(m: &SurfaceMap, iv: Interval) -> Result<SurfaceMap, MapError> {
    let lay = Layout::new(m).map_err(|mut e| e.remove(0))?;
    let ix = &lay.ix;
    let c = iv.country;
    let cb = partner_country(c);
    let (s, t) = (m.start_slot(iv).expect("proper"), m.end_slot(iv).expect("proper"));
    let (sb, tb) = (ix.partner[s], ix.partner[t]);
    let (x, y) = (ix.mate[sb], ix.mate[tb]);
    if x == tb {
        return Err(MapError::HalfDisc(format!("bigon {iv} closes up a boundary component")));
    }
    let gone = [s, t, sb, tb];
    let mut out = m.clone();
    for slots in &mut out.countries {
        slots.retain(|u| !gone.contains(u));
    }
    out.gluing.retain(|p| !gone.contains(&p[0]));
    out.arcs.retain(|a| !gone.contains(&a[0]) && !gone.contains(&a[1]));
    out.arcs.push([x, y]);
    let mut uf = UnionFind::new(m.faces.len());
    let before_tb = ending_at(m, ix, tb);
    let after_sb = Interval { country: cb, index: ix.pos[sb] };
    uf.union(lay.face_of[&before_tb], lay.face_of[&after_sb]);
    let old_of = |niv: Interval| -> Interval {
        match out.start_slot(niv) {
            Some(u) => Interval { country: niv.country, index: ix.pos[u] },
            None if niv.country == c => ending_at(m, ix, s),
            None => before_tb,
        }
    };
    let face_key: Vec<usize> = (0..m.faces.len()).map(|f| uf.find(f)).collect();
    let res = out.with_retraced_faces(|niv| {
        let f = lay.face_of[&old_of(niv)];
        (face_key[f], m.faces[f].in_s)
    })?;
    validate(&res).map_err(|mut e| e.remove(0))?;
    Ok(res)
}

/// Removes bigons until none is left, returning the new map and one step per
/// removal. Bigons whose removal would detach a boundary component stay.
pub fn remove_bigons(m: &SurfaceMap) -> Result<(SurfaceMap, Vec<MapStep>), MapError> {
    let mut cur = m.canonical();
    let mut steps = Vec::new();
    let mut skip = BTreeSet::new();
    while let Some(iv) = find_bigon(&cur, &skip) {
        match remove_bigon(&cur, iv) {
            Ok(next) => {
                steps.push(MapStep::Bigon { interval: iv, before: cur.crossings(), after: next.crossings() });
                cur = next;
                skip.clear();
            }
            Err(MapError::HalfDisc(_)) => {
                skip.insert(iv);
            }
            Err(e) => return Err(e),
        }
    }
    Ok((cur, steps))
}

/// Dual graph: per face, the neighbouring faces with the arc between them.
fn face_graph(m: &SurfaceMap, lay: &Layout) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); m.faces.len()];
    for (a, &[f, g]) in lay.arc_face.iter().enumerate() {
        adj[f].push((g, a));
        adj[g].push((f, a));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

fn bfs(adj: &[Vec<(usize, usize)>], from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(f) = queue.pop_front() {
        for &(g, _) in &adj[f] {
            if dist[g] == usize::MAX {
                dist[g] = dist[f] + 1;
                queue.push_back(g);
            }
        }
    }
    dist
}

/// Lexicographically least shortest face path from `from` to `to`, with the
/// least arc at each step.
fn least_path(adj: &[Vec<(usize, usize)>], from: usize, to: usize) -> (Vec<usize>, Vec<usize>) {
    let dist = bfs(adj, to);
    let mut faces = vec![from];
    let mut arcs = Vec::new();
    let mut cur = from;
    while cur != to {
        let &(g, a) = adj[cur].iter().find(|&&(g, _)| dist[g] + 1 == dist[cur]).expect("a neighbour one step closer");
        faces.push(g);
        arcs.push(a);
        cur = g;
    }
    (faces, arcs)
}

/// Shortcut candidate, ordered by crossings, face path, then endpoints and arcs.
type ShortcutKey = (usize, Vec<usize>, usize, usize, Vec<usize>);

/// Half-disc path candidate, ordered by arc count, faces, arcs, then endpoints.
type PathKey = (usize, Vec<usize>, Vec<usize>, usize, usize);

/// Finds an essential arc from a country back to itself crossing fewer arcs
/// than the slots on either side of its ends. Each pair of end intervals is
/// tried along its least shortest face path. Picks the smallest country,
/// then the fewest crossings, then the least face sequence.
pub fn find_shortcut_half_disc(m: &SurfaceMap) -> Result<Option<HalfDiscPath>, MapError> {
    let lay = Layout::new(m).map_err(|mut e| e.remove(0))?;
    let adj = face_graph(m, &lay);
    for c in 0..m.countries.len() {
        let n = m.countries[c].len();
        if n < 2 {
            continue;
        }
        let face = |k: usize| lay.face_of[&Interval { country: c, index: k }];
        let mut cands: Vec<ShortcutKey> = Vec::new();
        for p in 0..n {
            let dist = bfs(&adj, face(p));
            for q in (0..n).filter(|&q| q != p) {
                let d = dist[face(q)];
                let a = (q + n - p) % n;
                if d < a.min(n - a) {
                    let (faces, arcs) = least_path(&adj, face(p), face(q));
                    cands.push((d, faces, p, q, arcs));
                }
            }
        }
        cands.sort();
        for (_, faces, from, to, arcs) in cands {
            let k = HalfDiscPath { country: c, from, to, faces, arcs };
            if half_disc_is_essential(m, &k)? {
                return Ok(Some(k));
            }
        }
    }
    Ok(None)
}

/// Crossings of the closed curve running along `k` and back around the
/// slots of one side of its country: side A holds the slots after `from` up
/// to `to`, side B the rest.
fn compression_curve(
    cx: &Complex,
    dart_of: &HashMap<Interval, usize>,
    m: &SurfaceMap,
    k: &HalfDiscPath,
    side_a: bool,
) -> Result<Vec<Crossing>, MapError> {
    let c = k.country;
    let n = m.intervals_of(c);
    let md = |j: usize| dart_of[&Interval { country: c, index: j % n }];
    let route = cx
        .route(md(k.from), md(k.to), &k.arcs)
        .ok_or_else(|| MapError::HalfDisc(format!("{k} does not follow the map")))?;
    let mut out: Vec<Crossing> = route.into_iter().map(|dart| Crossing { dart, t: T_SCALE / 2 }).collect();
    if m.countries[c].is_empty() {
        return Ok(out);
    }
    let a = (k.to + n - k.from) % n;
    if side_a {
        for j in (k.from + 1..=k.from + a).rev() {
            let fan = cx.fan(md(j + n - 1) ^ 1, md(j));
            out.extend(fan.into_iter().rev().map(|d| Crossing { dart: d ^ 1, t: T_SCALE - 1 }));
        }
    } else {
        for j in k.to + 1..=k.to + (n - a) {
            let fan = cx.fan(md(j + n - 1) ^ 1, md(j));
            out.extend(fan.into_iter().map(|dart| Crossing { dart, t: 1 }));
        }
    }
    Ok(out)
}

/// Replaces the disc of `k`'s country by the disc bounded by `k` and one
/// side of the country, preferring the side with fewer slots and falling
/// back to the other when the first does not give a disc system.
pub fn boundary_compress(m: &SurfaceMap, k: &HalfDiscPath) -> Result<SurfaceMap, MapError> {
    let (cx, dart_of) = Complex::from_map(m)?;
    let c = k.country;
    let n = m.countries[c].len();
    if n < 2 || k.from >= n || k.to >= n || k.from == k.to {
        return Err(MapError::HalfDisc(format!("{k} does not join two intervals of one country")));
    }
    let gen = (c / 2 + 1) as u8;
    let a = (k.to + n - k.from) % n;
    let order = if a <= n - a { [true, false] } else { [false, true] };
    let mut errors = Vec::new();
    for side_a in order {
        let crossings = compression_curve(&cx, &dart_of, m, k, side_a)?;
        let mut work = cx.clone();
        for e in 0..work.edge_count() {
            if work.kind(e) == EdgeKind::Meridian(gen) {
                work.set_kind(e, EdgeKind::Virtual);
            }
        }
        let attempt = work.draw_curve(&crossings, EdgeKind::Meridian(gen)).and_then(|_| {
            if work.cut_is_connected() {
                work.to_map()
            } else {
                Err(MapError::HalfDisc(format!("{k} is inessential")))
            }
        });
        match attempt {
            Ok(out) if out.crossings() < m.crossings() => return Ok(out),
            Ok(out) => errors.push(MapError::PostconditionViolation(format!(
                "compressing along {k} left {} crossings (was {})",
                out.crossings(),
                m.crossings()
            ))),
            Err(e) => errors.push(e),
        }
    }
    let detached = errors.iter().find(|e| matches!(e, MapError::DetachedBoundary { .. }));
    Err(detached.cloned().unwrap_or_else(|| errors.pop().expect("two attempts")))
}

/// Alternates bigon removal and boundary compression along shortcut
/// half-discs until neither applies.
pub fn locally_minimize_map(m: &SurfaceMap) -> Result<(SurfaceMap, Vec<MapStep>), MapError> {
    let mut cur = m.canonical();
    validate(&cur).map_err(|mut e| e.remove(0))?;
    let mut steps = Vec::new();
    loop {
        let (next, bigons) = remove_bigons(&cur)?;
        steps.extend(bigons);
        cur = next;
        let Some(k) = find_shortcut_half_disc(&cur)? else { break };
        let next = boundary_compress(&cur, &k)?;
        steps.push(MapStep::Compress { path: k, before: cur.crossings(), after: next.crossings() });
        cur = next;
    }
    Ok((cur, steps))
}

/// Whether the closed curve made of `k` and the slots after its start up to
/// its end has a country other than `k`'s own on each side.
pub fn half_disc_is_essential(m: &SurfaceMap, k: &HalfDiscPath) -> Result<bool, MapError> {
    let (mut cx, dart_of) = Complex::from_map(m)?;
    let crossings = compression_curve(&cx, &dart_of, m, k, true)?;
    if crossings.is_empty() {
        return Ok(false);
    }
    let first_new = cx.edge_count();
    let chords = match cx.draw_curve(&crossings, EdgeKind::Virtual) {
        Ok(ch) => ch,
        Err(MapError::Inconsistent(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let chord_edges: BTreeSet<usize> = chords.iter().map(|d| d / 2).collect();
    let barrier = |e: usize| e >= first_new && chord_edges.contains(&e);
    let others = |start: usize| -> usize {
        let reached = cx.flood(start, &barrier);
        cx.countries_touching(&reached).into_iter().filter(|&x| x != k.country).count()
    };
    Ok(others(chords[0]) > 0 && others(chords[0] ^ 1) > 0)
}

/// The circle running along `k` and back around the side of its country
/// with fewer slots (side A on ties), pushed off the country.
pub fn half_disc_circle(m: &SurfaceMap, k: &HalfDiscPath) -> Result<DiscCurve, MapError> {
    let lay = Layout::new(m).map_err(|mut e| e.remove(0))?;
    let c = k.country;
    let n = m.countries[c].len();
    let mut faces = k.faces.clone();
    let mut crossings: Vec<(usize, u8)> = k.arcs.iter().map(|&a| (a, 2)).collect();
    let near = |slot: usize| -> (usize, u8) {
        let a = m.arcs.iter().position(|arc| arc.contains(&slot)).expect("every slot has an arc");
        (a, if m.arcs[a][0] == slot { 1 } else { 3 })
    };
    let face = |j: usize| lay.face_of[&Interval { country: c, index: j % n }];
    if n > 0 {
        let a = (k.to + n - k.from) % n;
        if a <= n - a {
            for j in (k.from + 1..=k.from + a).rev() {
                crossings.push(near(m.countries[c][j % n]));
                faces.push(face(j + n - 1));
            }
        } else {
            for j in k.to + 1..=k.to + (n - a) {
                crossings.push(near(m.countries[c][j % n]));
                faces.push(face(j));
            }
        }
        faces.pop();
    } else {
        faces.pop();
    }
    if faces.is_empty() {
        faces.push(k.faces[0]);
    }
    Ok(DiscCurve { faces, crossings, encircles: None })
}

/// The least essential half-disc based on `country` crossing at most
/// `max_len` arcs, over simple face paths; ordered by crossing count, face
/// sequence, arcs and end intervals.
pub fn min_essential_half_disc(
    m: &SurfaceMap,
    country: usize,
    max_len: usize,
) -> Result<Option<HalfDiscPath>, MapError> {
    let lay = Layout::new(m).map_err(|mut e| e.remove(0))?;
    let adj = face_graph(m, &lay);
    let n = m.intervals_of(country);
    let mut ends: HashMap<usize, Vec<usize>> = HashMap::new();
    for q in 0..n {
        ends.entry(lay.face_of[&Interval { country, index: q }]).or_default().push(q);
    }
    let mut cands: Vec<PathKey> = Vec::new();
    for p in 0..n {
        let start = lay.face_of[&Interval { country, index: p }];
        let mut faces = vec![start];
        let mut arcs = Vec::new();
        collect_paths(&adj, &ends, max_len, p, &mut faces, &mut arcs, &mut cands);
    }
    cands.sort();
    cands.dedup();
    for (_, faces, arcs, from, to) in cands {
        let k = HalfDiscPath { country, from, to, faces, arcs };
        if half_disc_is_essential(m, &k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn collect_paths(
    adj: &[Vec<(usize, usize)>],
    ends: &HashMap<usize, Vec<usize>>,
    max_len: usize,
    from: usize,
    faces: &mut Vec<usize>,
    arcs: &mut Vec<usize>,
    out: &mut Vec<PathKey>,
) {
    let cur = *faces.last().expect("nonempty");
    for &q in ends.get(&cur).into_iter().flatten() {
        if q != from || !arcs.is_empty() {
            out.push((arcs.len(), faces.clone(), arcs.clone(), from, q));
        }
    }
    if arcs.len() == max_len {
        return;
    }
    for &(g, a) in &adj[cur] {
        let closes = g == faces[0] && faces.len() > 1;
        if (faces.contains(&g) && !closes) || arcs.contains(&a) {
            continue;
        }
        faces.push(g);
        arcs.push(a);
        if closes {
            for &q in ends.get(&g).into_iter().flatten() {
                out.push((arcs.len(), faces.clone(), arcs.clone(), from, q));
            }
        } else {
            collect_paths(adj, ends, max_len, from, faces, arcs, out);
        }
        faces.pop();
        arcs.pop();
    }
}

/// In a map where some face has several boundary cycles, the loop in that
/// face around its first cycle bounds a disc in the handlebody missing both
/// the disc system and the subsurface boundary.
pub fn find_compressing_half_disc(m: &SurfaceMap) -> Option<DiscCurve> {
    m.faces.iter().position(|f| f.boundary.len() > 1).map(|f| DiscCurve {
        faces: vec![f],
        crossings: Vec::new(),
        encircles: Some(0),
    })
}

/// Slides the disc of `from`'s country over the disc of `to`'s country along
/// a band crossing `arcs` in order. The band leaves interval `from.index` and
/// reaches interval `to.index`; the two countries must belong to different
/// discs.
pub fn slide_disc(m: &SurfaceMap, from: Interval, to: Interval, arcs: &[usize]) -> Result<SurfaceMap, MapError> {
    if from.country / 2 == to.country / 2 {
        return Err(MapError::HalfDisc("a disc cannot slide over itself".into()));
    }
    let (mut cx, dart_of) = Complex::from_map(m)?;
    let md = |c: usize, j: usize| dart_of[&Interval { country: c, index: j % m.intervals_of(c) }];
    let tau = cx
        .route(md(from.country, from.index), md(to.country, to.index), arcs)
        .ok_or_else(|| MapError::HalfDisc("band does not follow the map".into()))?;
    let around = |cx: &Complex, c: usize, start: usize| -> Vec<Crossing> {
        let n = m.intervals_of(c);
        (start + 1..=start + n)
            .flat_map(|j| cx.fan(md(c, j + n - 1) ^ 1, md(c, j)))
            .map(|dart| Crossing { dart, t: 1 })
            .collect()
    };
    let mut crossings: Vec<Crossing> = tau.iter().map(|&dart| Crossing { dart, t: T_SCALE - 3 }).collect();
    crossings.extend(around(&cx, to.country, to.index));
    crossings.extend(tau.iter().rev().map(|&d| Crossing { dart: d ^ 1, t: T_SCALE - 3 }));
    crossings.extend(around(&cx, from.country, from.index));
    let gen = (from.country / 2 + 1) as u8;
    for e in 0..cx.edge_count() {
        if cx.kind(e) == EdgeKind::Meridian(gen) {
            cx.set_kind(e, EdgeKind::Virtual);
        }
    }
    cx.draw_curve(&crossings, EdgeKind::Meridian(gen))?;
    if !cx.cut_is_connected() {
        return Err(MapError::PostconditionViolation("slid disc does not give a disc system".into()));
    }
    cx.to_map()
}
