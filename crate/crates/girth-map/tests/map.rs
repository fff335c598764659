use std::collections::HashMap;
use std::path::PathBuf;

use girth_map::{
    boundary_components, cut_road, euler_char, find_compressing_half_disc, find_shortcut_half_disc,
    locally_minimize_map, validate, Complex, MapError, MapStep, SurfaceMap,
};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> SurfaceMap {
    let text = std::fs::read_to_string(fixture_dir().join(format!("{name}.json"))).unwrap();
    SurfaceMap::parse(&text).unwrap()
}

fn corpus() -> Vec<(String, SurfaceMap)> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), fixture(&n))).collect()
}

/// Boundary components by following arcs and gluings with a union-find.
fn count_boundaries(m: &SurfaceMap) -> usize {
    let n = m.slot_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &[s, t] in m.arcs.iter().chain(&m.gluing) {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        parent[a] = b;
    }
    let mut roots: Vec<usize> = (0..n).map(|s| find(&mut parent, s)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Euler characteristic from the cell structure: polygons inside S, less
/// shared sides, plus vertices away from the boundary.
fn chi_from_cells(m: &SurfaceMap) -> i64 {
    let (cx, _) = Complex::from_map(m).unwrap();
    let d = cx.dual_of_s();
    d.polygon_len.len() as i64 - d.edges.len() as i64 + d.interior_vertices.len() as i64
}

#[test]
fn corpus_is_valid_and_round_trips() {
    let all = corpus();
    assert!(all.len() >= 10);
    for (name, m) in &all {
        validate(m).unwrap_or_else(|e| panic!("{name}: {e:?}"));
        let again = SurfaceMap::parse(&m.to_json()).unwrap();
        assert_eq!(again, m.canonical(), "{name}");
        assert_eq!(again.to_json(), m.to_json(), "{name}");
    }
}

#[test]
fn euler_characteristic_matches_cell_count() {
    for (name, m) in corpus() {
        let chi = euler_char(&m).unwrap();
        if m.faces.iter().all(|f| f.boundary.len() == 1) {
            assert_eq!(chi, chi_from_cells(&m), "{name}");
        }
        assert_eq!(validate(&m).unwrap().chi, chi, "{name}");
    }
    assert_eq!(euler_char(&fixture("dual_graph")).unwrap(), -1);
    assert_eq!(euler_char(&fixture("zero_arc_g2")).unwrap(), -2);
}

#[test]
fn boundary_components_match_union_find() {
    for (name, m) in corpus() {
        let bc = boundary_components(&m);
        assert_eq!(bc.len(), count_boundaries(&m), "{name}");
        assert_eq!(validate(&m).unwrap().boundary_components, bc.len(), "{name}");
        let slots: usize = bc.iter().map(|b| b.slots.len()).sum();
        assert_eq!(slots, m.arcs.len(), "{name}");
    }
}

#[test]
fn annulus_boundaries_read_the_core_word() {
    let m = fixture("annulus_abAB");
    let words: Vec<String> = boundary_components(&m).iter().map(|b| b.word.cyclic().to_string()).collect();
    assert_eq!(words.len(), 2);
    assert!(words.iter().all(|w| w.len() == 4), "{words:?}");
}

#[test]
fn golden_diagnostics() {
    let cases = [
        ("annulus", "valid genus=2 chi=0 crossings=2 boundary_components=2 faces_in_s=1 faces_out=1 roads=1x2"),
        ("dual_graph", "valid genus=2 chi=-1 crossings=8 boundary_components=3 faces_in_s=3 faces_out=3 roads=1x2,2x3"),
        ("segregation_left", "valid genus=2 chi=-1 crossings=4 boundary_components=3 faces_in_s=1 faces_out=1 roads=1x4"),
        (
            "zero_arc_g2",
            "valid genus=2 chi=-2 crossings=0 boundary_components=0 faces_in_s=1 faces_out=0 roads=- multi_cycle_in_s=1",
        ),
    ];
    for (name, want) in cases {
        assert_eq!(validate(&fixture(name)).unwrap().to_string(), want, "{name}");
    }
}

fn rejects(m: &SurfaceMap, pred: impl Fn(&MapError) -> bool) -> bool {
    match validate(m) {
        Ok(_) => false,
        Err(errs) => errs.iter().any(pred),
    }
}

#[test]
fn validate_rejections() {
    let base = fixture("annulus_abAB");

    let mut m = base.clone();
    m.genus = 0;
    assert!(rejects(&m, |e| matches!(e, MapError::Genus(0))));

    let mut m = base.clone();
    m.countries.pop();
    assert!(rejects(&m, |e| matches!(e, MapError::CountryCount { .. })));

    let mut m = base.clone();
    m.arcs.pop();
    assert!(rejects(&m, |e| matches!(e, MapError::ArcMissing(_))));

    let mut m = base.clone();
    let s = m.countries[0][0];
    m.countries[0].push(s);
    assert!(rejects(&m, |_| true));

    let mut m = base.clone();
    m.gluing.pop();
    assert!(rejects(&m, |e| matches!(e, MapError::Unglued(_))));

    let mut m = base.clone();
    m.faces[0].in_s = !m.faces[0].in_s;
    assert!(rejects(&m, |e| matches!(e, MapError::ArcSides(..) | MapError::GluedSides(..))));

    let mut m = base.clone();
    let moved = m.faces[1].boundary[0].pop().unwrap();
    m.faces[0].boundary[0].push(moved);
    assert!(rejects(&m, |_| true));

    assert!(matches!(SurfaceMap::parse("{\"genus\": 2"), Err(MapError::Json(_))));
}

#[test]
fn minimizing_removes_shortcuts() {
    let m = fixture("halfdisc_shortcut");
    assert!(find_shortcut_half_disc(&m).unwrap().is_some());
    let (out, steps) = locally_minimize_map(&m).unwrap();
    assert!(steps.iter().any(|s| matches!(s, MapStep::Compress { .. })));
    assert!(out.crossings() < m.crossings());
    assert!(find_shortcut_half_disc(&out).unwrap().is_none());
    assert_eq!(euler_char(&out).unwrap(), euler_char(&m).unwrap());
    assert_eq!(boundary_components(&out).len(), boundary_components(&m).len());
    let (twice, more) = locally_minimize_map(&out).unwrap();
    assert!(more.is_empty());
    assert_eq!(twice, out.canonical());
}

#[test]
fn minimizing_keeps_topology_and_never_adds_crossings() {
    for (name, m) in corpus() {
        match locally_minimize_map(&m) {
            Ok((out, steps)) => {
                assert!(out.crossings() <= m.crossings(), "{name}");
                assert_eq!(euler_char(&out).unwrap(), euler_char(&m).unwrap(), "{name}");
                for s in &steps {
                    let (before, after) = match s {
                        MapStep::Bigon { before, after, .. } | MapStep::Compress { before, after, .. } => {
                            (before, after)
                        }
                    };
                    assert!(after < before, "{name}: {s}");
                }
            }
            Err(MapError::DetachedBoundary { .. }) => {}
            Err(e) => panic!("{name}: {e}"),
        }
    }
}

#[test]
fn compressing_loops() {
    assert!(find_compressing_half_disc(&fixture("zero_arc_g2")).is_some());
    assert!(find_compressing_half_disc(&fixture("annulus")).is_some());
    assert!(find_compressing_half_disc(&fixture("map1")).is_none());
    let (theta, _) = locally_minimize_map(&fixture("theta")).unwrap();
    assert!(find_compressing_half_disc(&theta).is_some());
}

#[test]
fn cutting_a_road_raises_chi_by_one() {
    let mut cuts = 0;
    for (name, m) in corpus() {
        let chi = euler_char(&m).unwrap();
        let arc_at: HashMap<usize, usize> =
            m.arcs.iter().enumerate().flat_map(|(a, &[s, t])| [(s, a), (t, a)]).collect();
        for (f, face) in m.faces.iter().enumerate() {
            if !face.in_s || face.boundary.len() != 1 {
                continue;
            }
            let arcs: Vec<usize> =
                face.boundary[0].iter().filter_map(|&iv| m.end_slot(iv)).map(|s| arc_at[&s]).collect();
            for (i, &x) in arcs.iter().enumerate() {
                for &y in &arcs[i + 1..] {
                    let out = cut_road(&m, f, x, y).unwrap_or_else(|e| panic!("{name} f{f} a{x} a{y}: {e}"));
                    validate(&out).unwrap();
                    assert_eq!(euler_char(&out).unwrap(), chi + 1, "{name} f{f} a{x} a{y}");
                    let before = boundary_components(&m).len() as i64;
                    let after = boundary_components(&out).len() as i64;
                    assert_eq!((after - before).abs(), 1, "{name} f{f} a{x} a{y}");
                    cuts += 1;
                }
            }
        }
    }
    assert!(cuts > 20);
}

#[test]
fn cutting_rejects_bad_lines() {
    let m = fixture("annulus_abAB");
    let out_face = m.faces.iter().position(|f| !f.in_s).unwrap();
    assert!(cut_road(&m, out_face, 0, 1).is_err());
    let road = m.faces.iter().position(|f| f.in_s).unwrap();
    assert!(cut_road(&m, road, 0, 0).is_err());
}

#[test]
fn out_of_range_country_is_reported_not_panicked() {
    let text = r#"{"genus": 2, "countries": [[0, 1], [2, 3], [], []], "gluing": [[0, 3], [1, 2]],
        "arcs": [[3, 0], [2, 1]], "faces": [{"in_s": true, "boundary": [[[0, 0], [61, 1]], [[0, 0]], [[3, 0]]]}]}"#;
    let m = SurfaceMap::parse(text).unwrap();
    let errs = validate(&m).unwrap_err();
    assert!(errs.iter().any(|e| e.to_string().contains("country61#1")), "{errs:?}");
}
